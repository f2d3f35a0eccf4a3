#include "subopt/design.hpp"

#include <cmath>
#include <string>

#include "linalg.hpp"
#include "subopt/errors.hpp"

namespace subopt {

SubsamplingDesign::SubsamplingDesign(CovariateDistribution dist, double alpha,
                                     IntervalUnion support, int degree_hint)
    : dist_(std::move(dist)), alpha_(alpha), support_(std::move(support)),
      degree_hint_(degree_hint) {
    if (!(alpha_ > 0.0 && alpha_ <= 1.0)) {
        throw invalid_argument_error("design: alpha must lie in (0, 1]");
    }
    if (degree_hint_ < 1) {
        throw invalid_argument_error("design: degree must be at least 1");
    }
    if (support_.empty()) {
        throw invalid_argument_error("design: support must be nonempty");
    }
    mass_ = 0.0;
    for (const Interval& iv : support_.parts()) {
        mass_ += dist_.partial_moment(0, iv.lo, iv.hi);
    }
    if (std::abs(mass_ - alpha_) > 1e-8) {
        throw invalid_argument_error("design: support mass " + std::to_string(mass_) +
                                     " does not match alpha " + std::to_string(alpha_));
    }
    symmetric_ = dist_.symmetric() && support_.symmetric_about(dist_.center());
}

double design_moment(const SubsamplingDesign& design, int k) {
    if (!design.dist().moment_order_available(k)) {
        throw invalid_argument_error("design_moment: E[X^" + std::to_string(k) +
                                     "] is infinite for this distribution");
    }
    if (k % 2 == 1 && design.symmetric() && design.dist().center() == 0.0) {
        return 0.0;
    }
    double m = 0.0;
    for (const Interval& iv : design.support().parts()) {
        m += design.dist().partial_moment(k, iv.lo, iv.hi);
    }
    return m;
}

InformationMatrix information_matrix(const SubsamplingDesign& design, int q) {
    if (q < 1) throw invalid_argument_error("information_matrix: degree must be at least 1");
    if (!design.dist().moment_order_available(2 * q)) {
        throw invalid_argument_error("information_matrix: moment of order " +
                                     std::to_string(2 * q) + " is infinite");
    }
    InformationMatrix M;
    M.q = q;
    M.moments.resize(static_cast<std::size_t>(2 * q) + 1);
    for (int k = 0; k <= 2 * q; ++k) {
        M.moments[static_cast<std::size_t>(k)] = design_moment(design, k);
    }
    return M;
}

namespace {

std::vector<double> dense(const InformationMatrix& M) {
    const int p = M.dim();
    std::vector<double> a(static_cast<std::size_t>(p) * p);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            a[static_cast<std::size_t>(i) * p + j] = M.entry(i, j);
        }
    }
    return a;
}

} // namespace

double d_criterion(const InformationMatrix& M) {
    detail::SymmetricFactor factor(dense(M), M.dim());
    return factor.log_det();
}

SensitivityEvaluator::SensitivityEvaluator(const InformationMatrix& M, double alpha)
    : q_(M.q), alpha_(alpha), coeffs_(static_cast<std::size_t>(2 * M.q) + 1, 0.0) {
    const int p = M.dim();
    detail::SymmetricFactor factor(dense(M), p);
    // Columns of M^{-1} via p solves; then c_k = alpha * sum_{j+j'=k} inv(j,j').
    std::vector<double> inv(static_cast<std::size_t>(p) * p);
    std::vector<double> e(static_cast<std::size_t>(p), 0.0);
    for (int col = 0; col < p; ++col) {
        e[static_cast<std::size_t>(col)] = 1.0;
        std::vector<double> x = factor.solve(e);
        e[static_cast<std::size_t>(col)] = 0.0;
        for (int row = 0; row < p; ++row) {
            inv[static_cast<std::size_t>(row) * p + col] = x[static_cast<std::size_t>(row)];
        }
    }
    for (int j = 0; j < p; ++j) {
        for (int jp = 0; jp < p; ++jp) {
            coeffs_[static_cast<std::size_t>(j + jp)] +=
                alpha_ * inv[static_cast<std::size_t>(j) * p + jp];
        }
    }
}

double SensitivityEvaluator::operator()(double x) const {
    double v = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        v = v * x + coeffs_[k];
    }
    return v;
}

double sensitivity(const SubsamplingDesign& design, int q, double x) {
    SensitivityEvaluator psi(information_matrix(design, q), design.alpha());
    return psi(x);
}

} // namespace subopt
