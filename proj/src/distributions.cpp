#include "subopt/distributions.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "subopt/errors.hpp"
#include "subopt/quadrature.hpp"
#include "number_format.hpp"
#include "special_functions.hpp"

namespace subopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double binomial_coefficient(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) {
        c *= static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return c;
}

// Upper-tail moment integrals of the standard normal, a >= 0:
// T_k(a) = int_a^inf x^k phi(x) dx for k in {2,4}.
double normal_tail_m2(double a) {
    return detail::norm_sf(a) + a * detail::norm_pdf(a);
}

double normal_tail_m4(double a) {
    return 3.0 * detail::norm_sf(a) + (a * a * a + 3.0 * a) * detail::norm_pdf(a);
}

// Upper-tail moment integrals of the standard t with 5 degrees of
// freedom, a >= 0. Obtained by integrating x^k (1 + x^2/5)^(-3) exactly.
double t5_tail_m2(double a) {
    double s5 = std::sqrt(5.0);
    double den = (a * a + 5.0);
    return (5.0 / (6.0 * M_PI)) *
           (M_PI - 2.0 * s5 * a * (a * a - 5.0) / (den * den) - 2.0 * std::atan(a / s5));
}

double t5_tail_m4(double a) {
    double s5 = std::sqrt(5.0);
    double den = (a * a + 5.0);
    return (25.0 / (6.0 * M_PI)) *
           (3.0 * M_PI + 10.0 * s5 * a * (a * a + 3.0) / (den * den) - 6.0 * std::atan(a / s5));
}

// Extend an upper-tail integral of an even function times x^k (k even)
// to negative endpoints using the full moment.
double even_tail(double a, double full_moment, double (*tail)(double)) {
    if (std::isinf(a)) return a > 0.0 ? 0.0 : full_moment;
    return a >= 0.0 ? tail(a) : full_moment - tail(-a);
}

// Exponential(1) upper-tail moments int_a^inf x^k e^-x dx, a >= 0.
double exp_tail(int k, double a) {
    if (std::isinf(a)) return 0.0;
    double e = std::exp(-a);
    switch (k) {
        case 0: return e;
        case 1: return (a + 1.0) * e;
        case 2: return (a * a + 2.0 * a + 2.0) * e;
        default: throw invalid_argument_error("exp_tail: no closed form for this order");
    }
}

} // namespace

CovariateDistribution::CovariateDistribution(DistKind kind, double loc, double scale,
                                             int dof, double rate)
    : kind_(kind), loc_(loc), scale_(scale), dof_(dof), rate_(rate) {}

CovariateDistribution CovariateDistribution::normal(double mean, double sd) {
    if (!(sd > 0.0) || !std::isfinite(sd) || !std::isfinite(mean)) {
        throw invalid_argument_error("normal: sd must be positive and parameters finite");
    }
    return CovariateDistribution(DistKind::normal, mean, sd, 0, 0.0);
}

CovariateDistribution CovariateDistribution::exponential(double rate) {
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw invalid_argument_error("exponential: rate must be positive and finite");
    }
    return CovariateDistribution(DistKind::exponential, 0.0, 1.0 / rate, 0, rate);
}

CovariateDistribution CovariateDistribution::uniform(double lower, double upper) {
    if (!(lower < upper) || !std::isfinite(lower) || !std::isfinite(upper)) {
        throw invalid_argument_error("uniform: need finite lower < upper");
    }
    return CovariateDistribution(DistKind::uniform, 0.5 * (lower + upper),
                                 0.5 * (upper - lower), 0, 0.0);
}

CovariateDistribution CovariateDistribution::student_t(int dof) {
    if (dof < 3) {
        throw invalid_argument_error("student_t: dof must be an integer >= 3");
    }
    return CovariateDistribution(DistKind::student_t, 0.0, 1.0, dof, 0.0);
}

CovariateDistribution CovariateDistribution::parse(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) {
        throw invalid_argument_error("distribution spec must look like kind:params, got '" + spec + "'");
    }
    std::string kind = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    std::vector<std::string> params;
    {
        std::stringstream ss(rest);
        std::string tok;
        while (std::getline(ss, tok, ',')) params.push_back(tok);
    }
    auto as_double = [&spec](const std::string& tok) {
        size_t pos = 0;
        double v;
        try {
            v = std::stod(tok, &pos);
        } catch (const std::exception&) {
            throw invalid_argument_error("bad number '" + tok + "' in distribution spec '" + spec + "'");
        }
        while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
        if (pos != tok.size() || !std::isfinite(v)) {
            throw invalid_argument_error("bad number '" + tok + "' in distribution spec '" + spec + "'");
        }
        return v;
    };
    auto need = [&](size_t n) {
        if (params.size() != n) {
            throw invalid_argument_error("distribution spec '" + spec + "' expects " +
                                         std::to_string(n) + " parameter(s)");
        }
    };
    if (kind == "normal") {
        need(2);
        return CovariateDistribution::normal(as_double(params[0]), as_double(params[1]));
    }
    if (kind == "exp") {
        need(1);
        return CovariateDistribution::exponential(as_double(params[0]));
    }
    if (kind == "unif") {
        need(2);
        return CovariateDistribution::uniform(as_double(params[0]), as_double(params[1]));
    }
    if (kind == "t") {
        need(1);
        double d = as_double(params[0]);
        if (d != std::floor(d)) {
            throw invalid_argument_error("t dof must be an integer, got '" + params[0] + "'");
        }
        return CovariateDistribution::student_t(static_cast<int>(d));
    }
    throw invalid_argument_error("unknown distribution kind '" + kind + "'");
}

double CovariateDistribution::standard_pdf(double z) const {
    switch (kind_) {
        case DistKind::normal: return detail::norm_pdf(z);
        case DistKind::exponential: return z >= 0.0 ? std::exp(-z) : 0.0;
        case DistKind::uniform: return (z >= -1.0 && z <= 1.0) ? 0.5 : 0.0;
        case DistKind::student_t: return detail::student_t_pdf(z, dof_);
    }
    return 0.0;
}

double CovariateDistribution::standard_cdf(double z) const {
    switch (kind_) {
        case DistKind::normal: return detail::norm_cdf(z);
        case DistKind::exponential: return z <= 0.0 ? 0.0 : -std::expm1(-z);
        case DistKind::uniform:
            if (z <= -1.0) return 0.0;
            if (z >= 1.0) return 1.0;
            return 0.5 * (z + 1.0);
        case DistKind::student_t: return detail::student_t_cdf(z, dof_);
    }
    return 0.0;
}

double CovariateDistribution::standard_quantile(double p) const {
    switch (kind_) {
        case DistKind::normal: return detail::norm_quantile(p);
        case DistKind::exponential: return -std::log1p(-p);
        case DistKind::uniform: return 2.0 * p - 1.0;
        case DistKind::student_t: return detail::student_t_quantile(p, dof_);
    }
    return 0.0;
}

double CovariateDistribution::pdf(double x) const {
    return standard_pdf((x - loc_) / scale_) / scale_;
}

double CovariateDistribution::cdf(double x) const {
    if (std::isnan(x)) throw invalid_argument_error("cdf: NaN argument");
    if (std::isinf(x)) return x > 0.0 ? 1.0 : 0.0;
    return standard_cdf((x - loc_) / scale_);
}

double CovariateDistribution::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) {
        throw invalid_argument_error("quantile: p must lie strictly inside (0,1)");
    }
    return loc_ + scale_ * standard_quantile(p);
}

bool CovariateDistribution::moment_order_available(int k) const {
    if (k < 0) return false;
    if (kind_ == DistKind::student_t) return k < dof_;
    return true;
}

double CovariateDistribution::standard_raw_moment(int k) const {
    switch (kind_) {
        case DistKind::normal: {
            if (k % 2 == 1) return 0.0;
            double m = 1.0;
            for (int i = k - 1; i >= 3; i -= 2) m *= i;
            return m; // (k-1)!! for even k
        }
        case DistKind::exponential: {
            double m = 1.0;
            for (int i = 2; i <= k; ++i) m *= i;
            return m; // k!
        }
        case DistKind::uniform:
            return (k % 2 == 1) ? 0.0 : 1.0 / (k + 1.0);
        case DistKind::student_t: {
            if (k % 2 == 1) return 0.0;
            double m = 1.0;
            for (int i = 1; 2 * i <= k; ++i) {
                m *= dof_ * (2.0 * i - 1.0) / (dof_ - 2.0 * i);
            }
            return m;
        }
    }
    return 0.0;
}

double CovariateDistribution::raw_moment(int k) const {
    if (k < 0) throw invalid_argument_error("raw_moment: order must be nonnegative");
    if (!moment_order_available(k)) {
        throw invalid_argument_error("raw_moment: E[X^" + std::to_string(k) +
                                     "] is infinite for this distribution");
    }
    if (loc_ == 0.0 && scale_ == 1.0) return standard_raw_moment(k);
    double total = 0.0;
    for (int j = 0; j <= k; ++j) {
        total += binomial_coefficient(k, j) * std::pow(loc_, k - j) *
                 std::pow(scale_, j) * standard_raw_moment(j);
    }
    return total;
}

double CovariateDistribution::standard_partial_moment(int k, double lo, double hi) const {
    // lo <= hi guaranteed; interval already clamped to the support.
    switch (kind_) {
        case DistKind::uniform: {
            double l = std::max(lo, -1.0), u = std::min(hi, 1.0);
            if (u <= l) return 0.0;
            return (std::pow(u, k + 1) - std::pow(l, k + 1)) / (2.0 * (k + 1));
        }
        case DistKind::exponential: {
            double l = std::max(lo, 0.0);
            if (hi <= l) return 0.0;
            if (k <= 2) return exp_tail(k, l) - exp_tail(k, hi);
            break;
        }
        case DistKind::normal: {
            if (k == 0) {
                if (lo >= 0.0) return detail::norm_sf(lo) - detail::norm_sf(hi);
                if (hi <= 0.0) return detail::norm_cdf(hi) - detail::norm_cdf(lo);
                return 1.0 - detail::norm_cdf(lo) - detail::norm_sf(hi);
            }
            if (k == 2) return even_tail(lo, 1.0, normal_tail_m2) - even_tail(hi, 1.0, normal_tail_m2);
            if (k == 4) return even_tail(lo, 3.0, normal_tail_m4) - even_tail(hi, 3.0, normal_tail_m4);
            if (k % 2 == 1 && lo == -hi) return 0.0;
            break;
        }
        case DistKind::student_t: {
            if (k == 0) {
                // Use tail symmetry to avoid cancellation far out.
                if (lo >= 0.0) return detail::student_t_cdf(-lo, dof_) - detail::student_t_cdf(-hi, dof_);
                return standard_cdf(hi) - standard_cdf(lo);
            }
            if (dof_ == 5) {
                if (k == 2) return even_tail(lo, 5.0 / 3.0, t5_tail_m2) - even_tail(hi, 5.0 / 3.0, t5_tail_m2);
                if (k == 4) return even_tail(lo, 25.0, t5_tail_m4) - even_tail(hi, 25.0, t5_tail_m4);
            }
            if (k % 2 == 1 && lo == -hi) return 0.0;
            break;
        }
    }
    auto integrand = [this, k](double z) { return std::pow(z, k) * standard_pdf(z); };
    return integrate(integrand, lo, hi).value;
}

double CovariateDistribution::partial_moment(int k, double lo, double hi) const {
    if (k < 0) throw invalid_argument_error("partial_moment: order must be nonnegative");
    if (!moment_order_available(k)) {
        throw invalid_argument_error("partial_moment: E[X^" + std::to_string(k) +
                                     "] is infinite for this distribution");
    }
    if (std::isnan(lo) || std::isnan(hi)) {
        throw invalid_argument_error("partial_moment: NaN interval endpoint");
    }
    if (lo > hi) throw invalid_argument_error("partial_moment: interval lower exceeds upper");
    double l = std::max(lo, support_lo());
    double u = std::min(hi, support_hi());
    if (u <= l) return 0.0;
    double zl = std::isinf(l) ? -kInf : (l - loc_) / scale_;
    double zu = std::isinf(u) ? kInf : (u - loc_) / scale_;
    if (loc_ == 0.0 && scale_ == 1.0) return standard_partial_moment(k, zl, zu);
    double total = 0.0;
    for (int j = 0; j <= k; ++j) {
        total += binomial_coefficient(k, j) * std::pow(loc_, k - j) *
                 std::pow(scale_, j) * standard_partial_moment(j, zl, zu);
    }
    return total;
}

CovariateDistribution CovariateDistribution::location_scale(double mu, double sigma) const {
    if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(mu)) {
        throw invalid_argument_error("location_scale: need finite mu and sigma > 0");
    }
    CovariateDistribution out = *this;
    out.loc_ = sigma * loc_ + mu;
    out.scale_ = sigma * scale_;
    if (kind_ == DistKind::exponential) out.rate_ = rate_ / sigma;
    return out;
}

double CovariateDistribution::center() const {
    if (!symmetric()) {
        throw invalid_argument_error("center: distribution is not symmetric");
    }
    return loc_;
}

double CovariateDistribution::support_lo() const {
    switch (kind_) {
        case DistKind::exponential: return loc_;
        case DistKind::uniform: return loc_ - scale_;
        default: return -kInf;
    }
}

double CovariateDistribution::support_hi() const {
    switch (kind_) {
        case DistKind::uniform: return loc_ + scale_;
        default: return kInf;
    }
}

int CovariateDistribution::dof() const {
    if (kind_ != DistKind::student_t) {
        throw invalid_argument_error("dof: only defined for Student-t");
    }
    return dof_;
}

std::string CovariateDistribution::spec_string() const {
    switch (kind_) {
        case DistKind::normal:
            return "normal:" + detail::format_shortest(loc_) + "," + detail::format_shortest(scale_);
        case DistKind::uniform:
            return "unif:" + detail::format_shortest(loc_ - scale_) + "," +
                   detail::format_shortest(loc_ + scale_);
        case DistKind::exponential:
            if (loc_ != 0.0) {
                throw invalid_argument_error("spec_string: shifted exponential has no canonical spec");
            }
            return "exp:" + detail::format_shortest(rate_);
        case DistKind::student_t:
            if (loc_ != 0.0 || scale_ != 1.0) {
                throw invalid_argument_error("spec_string: transformed Student-t has no canonical spec");
            }
            return "t:" + std::to_string(dof_);
    }
    throw invalid_argument_error("spec_string: unknown kind");
}

bool CovariateDistribution::operator==(const CovariateDistribution& other) const {
    if (kind_ != other.kind_ || loc_ != other.loc_ || scale_ != other.scale_) return false;
    if (kind_ == DistKind::student_t && dof_ != other.dof_) return false;
    return true;
}

} // namespace subopt
