#pragma once

// Covariate distributions for one-dimensional polynomial regression:
// Normal, Exponential, Uniform, and Student-t, each represented as an
// affine image loc + scale * S of a standard member (N(0,1), Exp(1),
// U(-1,1), t_dof). The affine form makes the family closed under
// location-scale transforms, which the solver uses to standardize a
// problem before solving and to map designs back afterwards.

#include <string>

namespace subopt {

enum class DistKind { normal, exponential, uniform, student_t };

class CovariateDistribution {
public:
    static CovariateDistribution normal(double mean, double sd);
    static CovariateDistribution exponential(double rate);
    static CovariateDistribution uniform(double lower, double upper);
    static CovariateDistribution student_t(int dof);

    // CLI spec string: normal:mu,sd | exp:rate | unif:lo,hi | t:dof
    static CovariateDistribution parse(const std::string& spec);

    DistKind kind() const { return kind_; }

    double pdf(double x) const;
    double cdf(double x) const;
    // Inverse cdf; requires 0 < p < 1.
    double quantile(double p) const;

    // Integral of x^k times the density over [lo, hi] intersected with the
    // support. Endpoints may be infinite. Closed forms are used for
    // (Exponential, k<=2), (Normal, k in {0,2,4}), (StudentT(5), k in
    // {0,2,4}), (Uniform, any k); adaptive quadrature otherwise.
    double partial_moment(int k, double lo, double hi) const;

    // Full-support moment E[X^k] in closed form.
    double raw_moment(int k) const;

    // True iff E[X^k] is finite: always for Normal/Exponential/Uniform,
    // and iff k < dof for Student-t. False for k < 0.
    bool moment_order_available(int k) const;

    // Distribution of mu + sigma * X. Requires sigma > 0.
    CovariateDistribution location_scale(double mu, double sigma) const;

    bool symmetric() const { return kind_ != DistKind::exponential; }
    // Point of symmetry; only meaningful for symmetric kinds.
    double center() const;
    double support_lo() const;
    double support_hi() const;

    // Affine representation accessors: X = loc + scale * S.
    double loc() const { return loc_; }
    double scale() const { return scale_; }
    int dof() const;

    // Canonical CLI spec string. Throws when the distribution left the
    // canonical parameterization (a shifted exponential or a scaled
    // Student-t has no spec-string form).
    std::string spec_string() const;

    bool operator==(const CovariateDistribution& other) const;

private:
    CovariateDistribution(DistKind kind, double loc, double scale, int dof, double rate);

    // Moment of the standard member over a standard-coordinate interval.
    double standard_partial_moment(int k, double lo, double hi) const;
    double standard_pdf(double z) const;
    double standard_cdf(double z) const;
    double standard_quantile(double p) const;
    double standard_raw_moment(int k) const;

    DistKind kind_;
    double loc_;
    double scale_;
    int dof_;     // student_t only
    double rate_; // exponential only, kept exact for spec_string round-trips
};

} // namespace subopt
