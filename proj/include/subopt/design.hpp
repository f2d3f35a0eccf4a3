#pragma once

// Subsampling designs and their information matrices. A design keeps the
// covariate density on its support and drops it elsewhere, so it is fully
// described by the distribution, the target mass alpha, and the support.

#include <vector>

#include "subopt/distributions.hpp"
#include "subopt/interval_union.hpp"

namespace subopt {

class SubsamplingDesign {
public:
    // Validates 0 < alpha <= 1 and that the support carries probability
    // mass alpha under dist (within 1e-8).
    SubsamplingDesign(CovariateDistribution dist, double alpha,
                      IntervalUnion support, int degree_hint);

    const CovariateDistribution& dist() const { return dist_; }
    double alpha() const { return alpha_; }
    const IntervalUnion& support() const { return support_; }
    int degree_hint() const { return degree_hint_; }

    // Probability mass of the support under dist, cached at construction.
    double mass() const { return mass_; }

    // True when dist is symmetric and the support mirrors through its
    // center, so all odd central design moments vanish identically.
    bool symmetric() const { return symmetric_; }

private:
    CovariateDistribution dist_;
    double alpha_;
    IntervalUnion support_;
    int degree_hint_;
    double mass_;
    bool symmetric_;
};

// k-th moment of the design measure: sum of partial moments of dist over
// the support intervals. Exact zero for odd k on symmetric designs
// centered at zero.
double design_moment(const SubsamplingDesign& design, int k);

// Hankel moment matrix of a design; entry (j,j') = m_{j+j'}.
struct InformationMatrix {
    int q = 0;
    std::vector<double> moments; // m_0 .. m_{2q}

    int dim() const { return q + 1; }
    double entry(int j, int jp) const { return moments[static_cast<std::size_t>(j + jp)]; }
};

InformationMatrix information_matrix(const SubsamplingDesign& design, int q);

// log det M via Cholesky. Throws numerical_error when M is not positive
// definite to working precision (a degenerate design).
double d_criterion(const InformationMatrix& M);

// Evaluates psi(x) = alpha * f(x)^T M^{-1} f(x) with f(x) = (1, x, .., x^q).
// Precomputes the polynomial coefficients of psi once, so evaluation is a
// Horner pass.
class SensitivityEvaluator {
public:
    SensitivityEvaluator(const InformationMatrix& M, double alpha);

    double operator()(double x) const;
    int degree() const { return q_; }
    double alpha() const { return alpha_; }
    // psi as polynomial: coefficients c_0..c_{2q}, psi(x) = sum c_k x^k.
    const std::vector<double>& coefficients() const { return coeffs_; }

private:
    int q_;
    double alpha_;
    std::vector<double> coeffs_;
};

// Convenience: sensitivity of a design at one point.
double sensitivity(const SubsamplingDesign& design, int q, double x);

} // namespace subopt
