#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "subopt/design.hpp"
#include "subopt/errors.hpp"

using namespace subopt;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Frozen linear-case boundaries for the standard exponential at
// alpha = 0.5 (lower interval [0, b], upper [a, inf)).
constexpr double kExpB = 0.3957239849;
constexpr double kExpA = 1.7533516925;

SubsamplingDesign exp_linear_design() {
    CovariateDistribution d = CovariateDistribution::exponential(1.0);
    return SubsamplingDesign(d, 0.5, IntervalUnion({{0.0, kExpB}, {kExpA, kInf}}), 1);
}

SubsamplingDesign normal_two_tail_design(double alpha) {
    CovariateDistribution d = CovariateDistribution::normal(0.0, 1.0);
    double z = d.quantile(1.0 - alpha / 2.0);
    return SubsamplingDesign(d, alpha, IntervalUnion({{-kInf, -z}, {z, kInf}}), 2);
}

// psi for a quadratic model on a symmetric design, from the explicit
// inverse of the 3x3 moment matrix [[m0,0,m2],[0,m2,0],[m2,0,m4]].
double psi_quadratic_symmetric(double alpha, double m0, double m2, double m4, double x) {
    double det = m0 * m4 - m2 * m2;
    double x2 = x * x;
    return alpha * ((m4 - 2.0 * m2 * x2 + m0 * x2 * x2) / det + x2 / m2);
}

} // namespace

TEST_SUITE("design") {

TEST_CASE("construction validates mass and arguments") {
    CovariateDistribution d = CovariateDistribution::normal(0.0, 1.0);
    double z = d.quantile(0.75);
    IntervalUnion tails({{-kInf, -z}, {z, kInf}});
    CHECK_NOTHROW(SubsamplingDesign(d, 0.5, tails, 1));
    // wrong mass
    CHECK_THROWS_AS(SubsamplingDesign(d, 0.4, tails, 1), invalid_argument_error);
    // bad alpha
    CHECK_THROWS_AS(SubsamplingDesign(d, 0.0, tails, 1), invalid_argument_error);
    CHECK_THROWS_AS(SubsamplingDesign(d, 1.5, tails, 1), invalid_argument_error);
    // empty support
    CHECK_THROWS_AS(SubsamplingDesign(d, 0.5, IntervalUnion(), 1), invalid_argument_error);
    // bad degree hint
    CHECK_THROWS_AS(SubsamplingDesign(d, 0.5, tails, 0), invalid_argument_error);
}

TEST_CASE("alpha = 1 is the full-population design") {
    CovariateDistribution d = CovariateDistribution::uniform(-1.0, 1.0);
    SubsamplingDesign full(d, 1.0, IntervalUnion({{-1.0, 1.0}}), 2);
    CHECK(full.mass() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(design_moment(full, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("design moments of the frozen exponential linear design") {
    SubsamplingDesign design = exp_linear_design();
    CHECK(design_moment(design, 0) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(design_moment(design, 1) == doctest::Approx(0.537268919352).epsilon(1e-9));
    CHECK(design_moment(design, 2) == doctest::Approx(1.501553226133).epsilon(1e-9));
}

TEST_CASE("odd moments vanish exactly on symmetric designs") {
    SubsamplingDesign design = normal_two_tail_design(0.3);
    CHECK(design.symmetric());
    CHECK(design_moment(design, 1) == 0.0);
    CHECK(design_moment(design, 3) == 0.0);
}

TEST_CASE("two-tail normal second moment reference value") {
    SubsamplingDesign design = normal_two_tail_design(0.05);
    CHECK(design_moment(design, 2) == doctest::Approx(0.27910046378359732).epsilon(1e-10));
}

TEST_CASE("information matrix is the Hankel matrix of moments") {
    SubsamplingDesign design = exp_linear_design();
    InformationMatrix M = information_matrix(design, 2);
    CHECK(M.dim() == 3);
    for (int j = 0; j <= 2; ++j) {
        for (int jp = 0; jp <= 2; ++jp) {
            CHECK(M.entry(j, jp) == M.moments[static_cast<std::size_t>(j + jp)]);
        }
    }
    // boundaries are rounded to ten digits, so the mass is 0.5 + O(1e-10)
    CHECK(M.entry(0, 0) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("d_criterion matches the closed 2x2 determinant") {
    SubsamplingDesign design = exp_linear_design();
    InformationMatrix M = information_matrix(design, 1);
    double det = M.entry(0, 0) * M.entry(1, 1) - M.entry(0, 1) * M.entry(1, 0);
    CHECK(d_criterion(M) == doctest::Approx(std::log(det)).epsilon(1e-12));
}

TEST_CASE("d_criterion matches the closed 3x3 determinant") {
    SubsamplingDesign design = normal_two_tail_design(0.3);
    InformationMatrix M = information_matrix(design, 2);
    double m0 = M.moments[0], m2 = M.moments[2], m4 = M.moments[4];
    // odd moments vanish, so det = m2 (m0 m4 - m2^2)
    CHECK(d_criterion(M) == doctest::Approx(std::log(m2 * (m0 * m4 - m2 * m2))).epsilon(1e-12));
}

TEST_CASE("d_criterion rejects a singular moment matrix") {
    InformationMatrix M;
    M.q = 1;
    M.moments = {1.0, 1.0, 1.0}; // rank one
    CHECK_THROWS_AS(d_criterion(M), numerical_error);
}

TEST_CASE("sensitivity evaluator matches the explicit quadratic form") {
    SubsamplingDesign design = normal_two_tail_design(0.3);
    InformationMatrix M = information_matrix(design, 2);
    SensitivityEvaluator psi(M, design.alpha());
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int i = 0; i < 1000; ++i) {
        double x = u(rng);
        double expected = psi_quadratic_symmetric(0.3, M.moments[0], M.moments[2],
                                                  M.moments[4], x);
        CHECK(psi(x) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("sensitivity for the linear symmetric case is 1 + alpha x^2 / m2") {
    SubsamplingDesign design = normal_two_tail_design(0.4);
    InformationMatrix M = information_matrix(design, 1);
    SensitivityEvaluator psi(M, 0.4);
    for (double x : {-2.0, -0.5, 0.0, 0.3, 1.7}) {
        double expected = 1.0 + 0.4 * x * x / M.moments[2];
        CHECK(psi(x) == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK(sensitivity(design, 1, 1.7) == doctest::Approx(psi(1.7)).epsilon(1e-14));
}

TEST_CASE("sensitivity integrates to the dimension over the design") {
    // A known identity: E_xi[psi] = alpha * trace(M^-1 M)/... reduces to
    // integral of psi against the design density equal to p = q + 1.
    SubsamplingDesign design = normal_two_tail_design(0.3);
    InformationMatrix M = information_matrix(design, 2);
    SensitivityEvaluator psi(M, design.alpha());
    // integrate psi * f over the support via the moment representation:
    // psi is a polynomial sum c_k x^k, so the integral is sum c_k m_k / alpha
    // against the design measure xi (density f/alpha on the support).
    const std::vector<double>& c = psi.coefficients();
    double total = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        total += c[k] * design_moment(design, static_cast<int>(k)) / design.alpha();
    }
    CHECK(total == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("information matrix requires finite moments") {
    CovariateDistribution t5 = CovariateDistribution::student_t(5);
    double z = t5.quantile(0.75);
    SubsamplingDesign design(t5, 0.5, IntervalUnion({{-kInf, -z}, {z, kInf}}), 2);
    CHECK_THROWS_AS(information_matrix(design, 3), invalid_argument_error);
    CHECK_THROWS_AS(design_moment(design, 5), invalid_argument_error);
}

} // TEST_SUITE
