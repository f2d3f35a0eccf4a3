#include "special_functions.hpp"

#include <cmath>
#include <limits>

#include "subopt/errors.hpp"

namespace subopt::detail {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244008443621048490;
constexpr double kSqrt2Pi = 2.5066282746310005024157652848110453;
} // namespace

double norm_pdf(double x) {
    return std::exp(-0.5 * x * x) / kSqrt2Pi;
}

double norm_cdf(double x) {
    return 0.5 * std::erfc(-x * kInvSqrt2);
}

double norm_sf(double x) {
    return 0.5 * std::erfc(x * kInvSqrt2);
}

double norm_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0) return -std::numeric_limits<double>::infinity();
        if (p == 1.0) return std::numeric_limits<double>::infinity();
        throw invalid_argument_error("norm_quantile: p must lie in [0,1]");
    }

    // Rational approximations in three regimes (Acklam's coefficients),
    // giving roughly 1e-9 relative error before refinement.
    static const double a[6] = {
        -3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
        1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {
        -5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
        6.680131188771972e+01, -1.328068155288572e+01};
    static const double c[6] = {
        -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
        -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00};
    static const double d[4] = {
        7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
        3.754408661907416e+00};

    const double p_low = 0.02425;
    double x;
    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // Two Halley refinements against the forward cdf. Skipped far out in the
    // tails where the density underflows and the correction is 0/0; the
    // rational estimate is already more than adequate there.
    if (std::abs(x) < 37.0) {
        for (int it = 0; it < 2; ++it) {
            // Residual cdf(x) - p, expressed through whichever tail keeps
            // the subtraction well conditioned.
            double e = (x < 0.0) ? (norm_cdf(x) - p) : ((1.0 - p) - norm_sf(x));
            double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
            x = x - u / (1.0 + 0.5 * x * u);
        }
    }
    return x;
}

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw invalid_argument_error("incomplete_beta: shape parameters must be positive");
    }
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    // Continued fraction converges fastest for x below the mean-ish cut;
    // otherwise evaluate the reflected integral.
    if (x > (a + 1.0) / (a + b + 2.0)) {
        return 1.0 - incomplete_beta(b, a, 1.0 - x);
    }

    const double ln_front = a * std::log(x) + b * std::log1p(-x) -
                            (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
    const double front = std::exp(ln_front) / a;

    // Modified Lentz evaluation of the standard continued fraction.
    const double tiny = 1e-300;
    double f = 1.0, C = 1.0, D = 0.0;
    for (int m = 0; m <= 400; ++m) {
        double numerator;
        if (m == 0) {
            numerator = 1.0;
        } else if (m % 2 == 0) {
            int k = m / 2;
            numerator = k * (b - k) * x / ((a + 2.0 * k - 1.0) * (a + 2.0 * k));
        } else {
            int k = (m - 1) / 2;
            numerator = -(a + k) * (a + b + k) * x / ((a + 2.0 * k) * (a + 2.0 * k + 1.0));
        }
        D = 1.0 + numerator * D;
        if (std::abs(D) < tiny) D = tiny;
        D = 1.0 / D;
        C = 1.0 + numerator / C;
        if (std::abs(C) < tiny) C = tiny;
        double delta = C * D;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) {
            return front * (f - 1.0);
        }
    }
    throw numerical_error("incomplete_beta: continued fraction did not converge");
}

double student_t_pdf(double x, double nu) {
    if (!(nu > 0.0)) throw invalid_argument_error("student_t_pdf: dof must be positive");
    double lc = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                0.5 * std::log(nu * M_PI);
    return std::exp(lc - 0.5 * (nu + 1.0) * std::log1p(x * x / nu));
}

double student_t_cdf(double x, double nu) {
    if (!(nu > 0.0)) throw invalid_argument_error("student_t_cdf: dof must be positive");
    if (std::isinf(x)) return x > 0.0 ? 1.0 : 0.0;
    double x2 = x * x;
    double half_tail;
    if (x2 < nu) {
        // complementary form: nu/(nu + x^2) would round to 1 for small x
        double w = x2 / (nu + x2);
        half_tail = 0.5 * (1.0 - incomplete_beta(0.5, 0.5 * nu, w));
    } else {
        half_tail = 0.5 * incomplete_beta(0.5 * nu, 0.5, nu / (nu + x2));
    }
    return x <= 0.0 ? half_tail : 1.0 - half_tail;
}

double student_t_quantile(double p, double nu) {
    if (!(nu > 0.0)) throw invalid_argument_error("student_t_quantile: dof must be positive");
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0) return -std::numeric_limits<double>::infinity();
        if (p == 1.0) return std::numeric_limits<double>::infinity();
        throw invalid_argument_error("student_t_quantile: p must lie in [0,1]");
    }
    if (p == 0.5) return 0.0;
    // Solve cdf(x) = p by safeguarded Newton inside an expanding bracket.
    double z = norm_quantile(p);
    double x = (nu > 2.0) ? z * std::sqrt(nu / (nu - 2.0)) : z;
    double lo = -1.0, hi = 1.0;
    while (student_t_cdf(lo, nu) > p) lo *= 2.0;
    while (student_t_cdf(hi, nu) < p) hi *= 2.0;
    if (x <= lo || x >= hi) x = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        double F = student_t_cdf(x, nu) - p;
        if (F > 0.0) hi = x; else lo = x;
        double dF = student_t_pdf(x, nu);
        double step = (dF > 0.0) ? F / dF : 0.0;
        double xn = x - step;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::abs(xn - x) < 1e-15 * (1.0 + std::abs(xn))) return xn;
        x = xn;
    }
    return x;
}

} // namespace subopt::detail
