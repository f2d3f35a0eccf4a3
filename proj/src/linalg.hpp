#pragma once

// Minimal dense symmetric positive definite support for the small (p <= 8
// in practice) information matrices: Cholesky factorization, log
// determinant, and linear solves.

#include <vector>

namespace subopt::detail {

class SymmetricFactor {
public:
    // a: row-major n*n symmetric matrix. Throws numerical_error when a
    // pivot falls below pivot_tol * max(1, largest diagonal entry),
    // signalling a numerically singular (degenerate) matrix.
    SymmetricFactor(const std::vector<double>& a, int n, double pivot_tol = 1e-14);

    double log_det() const;
    std::vector<double> solve(const std::vector<double>& rhs) const;
    int dim() const { return n_; }

private:
    int n_;
    std::vector<double> chol_; // lower triangle of L, row-major
};

} // namespace subopt::detail
