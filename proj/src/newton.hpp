#pragma once

// Damped Newton iteration for small square nonlinear systems with a
// finite-difference Jacobian and Armijo backtracking on the squared
// residual norm. One run from one starting point; restart strategies
// belong to the callers, which know how to perturb their own seeds.

#include <functional>
#include <vector>

namespace subopt::detail {

struct NewtonOptions {
    int max_iterations = 200;
    // Convergence: max-norm of the residual vector.
    double tol = 1e-12;
    double fd_step = 1e-7;
};

struct NewtonResult {
    std::vector<double> x;
    std::vector<double> residuals;
    int iterations = 0;
    bool converged = false;
};

using VectorFunction = std::function<std::vector<double>(const std::vector<double>&)>;

NewtonResult damped_newton(const VectorFunction& F, std::vector<double> x0,
                           const NewtonOptions& opts = {});

} // namespace subopt::detail
