#pragma once

// Solvers for the D-optimal subsampling boundaries: quantile formulas for
// linear regression under symmetry, damped Newton for the asymmetric
// linear and quadratic cases, a radical closed form for the uniform
// quadratic case, and a symmetric solver for general degree.

#include <string>
#include <vector>

#include "subopt/design.hpp"
#include "subopt/optimality.hpp"

namespace subopt {

enum class SolveBranch { three_interval, two_interval, closed_form, quantile };

std::string to_string(SolveBranch branch);

struct SolveReport {
    SubsamplingDesign design;
    // Finite support boundaries in descending order (2r values).
    std::vector<double> boundaries;
    int r = 0;
    double threshold = 0.0;
    double logdet = 0.0;
    std::vector<double> residuals;
    int iterations = 0;
    bool equivalence_ok = false;
    SolveBranch branch = SolveBranch::quantile;
};

// Linear regression, symmetric covariate: tails beyond the alpha/2 and
// 1-alpha/2 quantiles. Errors on asymmetric distributions (use
// solve_linear_asymmetric).
SolveReport solve_linear_symmetric(const CovariateDistribution& dist, double alpha);

// Linear regression, any covariate: two-boundary Newton solve of the mass
// and first-moment conditions, with the lower interval clamped to the
// support edge.
SolveReport solve_linear_asymmetric(const CovariateDistribution& dist, double alpha);

// Quadratic regression, symmetric covariate: tries the three-interval
// branch (tails plus a center interval) and falls back to pure tails at
// the 1-alpha/2 quantile when the center interval vanishes.
SolveReport solve_quadratic_symmetric(const CovariateDistribution& dist, double alpha);

// Quadratic regression on Uniform(-1,1): explicit radical solution.
SolveReport solve_uniform_quadratic_closed_form(double alpha);

// Same closed form carried to an arbitrary uniform distribution through
// the location-scale equivariance of the boundaries.
SolveReport solve_uniform_quadratic_closed_form(const CovariateDistribution& dist, double alpha);

// The proportion alpha* where the quadratic solution switches between
// three and two intervals: the sign change of the center-vs-boundary
// sensitivity gap of the two-tails design. Returns 1 when the gap is
// positive on all of (0,1) (normal, uniform).
double critical_alpha(const CovariateDistribution& dist);

// Symmetric covariate, any degree q >= 1: solves for r boundary pairs
// (mass constraint plus equal sensitivity at all boundaries), trying
// r = q down to 1, and returns the first candidate that passes the
// equivalence check.
SolveReport solve_general_symmetric(const CovariateDistribution& dist, int q, double alpha);

// Routes to the most specific solver for (dist, q): quantile formula or
// asymmetric Newton for q = 1, the uniform closed form or symmetric
// Newton for q = 2, and the general boundary solver for q >= 3.
SolveReport solve_optimal(const CovariateDistribution& dist, int q, double alpha);

} // namespace subopt
