#include "linalg.hpp"

#include <cmath>
#include <string>

#include "subopt/errors.hpp"

namespace subopt::detail {

SymmetricFactor::SymmetricFactor(const std::vector<double>& a, int n, double pivot_tol)
    : n_(n), chol_(static_cast<std::size_t>(n) * n, 0.0) {
    if (n <= 0 || a.size() != static_cast<std::size_t>(n) * n) {
        throw invalid_argument_error("SymmetricFactor: bad dimensions");
    }
    double max_diag = 1.0;
    for (int i = 0; i < n; ++i) {
        max_diag = std::max(max_diag, std::abs(a[static_cast<std::size_t>(i) * n + i]));
    }
    const double floor = pivot_tol * max_diag;
    for (int j = 0; j < n; ++j) {
        for (int i = j; i < n; ++i) {
            double s = a[static_cast<std::size_t>(i) * n + j];
            for (int k = 0; k < j; ++k) {
                s -= chol_[static_cast<std::size_t>(i) * n + k] *
                     chol_[static_cast<std::size_t>(j) * n + k];
            }
            if (i == j) {
                if (!(s > floor)) {
                    throw numerical_error(
                        "matrix is not positive definite to working precision (pivot " +
                        std::to_string(s) + " at index " + std::to_string(j) + ")");
                }
                chol_[static_cast<std::size_t>(j) * n + j] = std::sqrt(s);
            } else {
                chol_[static_cast<std::size_t>(i) * n + j] =
                    s / chol_[static_cast<std::size_t>(j) * n + j];
            }
        }
    }
}

double SymmetricFactor::log_det() const {
    double ld = 0.0;
    for (int i = 0; i < n_; ++i) {
        ld += std::log(chol_[static_cast<std::size_t>(i) * n_ + i]);
    }
    return 2.0 * ld;
}

std::vector<double> SymmetricFactor::solve(const std::vector<double>& rhs) const {
    if (rhs.size() != static_cast<std::size_t>(n_)) {
        throw invalid_argument_error("SymmetricFactor::solve: dimension mismatch");
    }
    std::vector<double> y(rhs);
    // Forward substitution L y = rhs.
    for (int i = 0; i < n_; ++i) {
        double s = y[static_cast<std::size_t>(i)];
        for (int k = 0; k < i; ++k) {
            s -= chol_[static_cast<std::size_t>(i) * n_ + k] * y[static_cast<std::size_t>(k)];
        }
        y[static_cast<std::size_t>(i)] = s / chol_[static_cast<std::size_t>(i) * n_ + i];
    }
    // Back substitution L^T x = y.
    for (int i = n_ - 1; i >= 0; --i) {
        double s = y[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < n_; ++k) {
            s -= chol_[static_cast<std::size_t>(k) * n_ + i] * y[static_cast<std::size_t>(k)];
        }
        y[static_cast<std::size_t>(i)] = s / chol_[static_cast<std::size_t>(i) * n_ + i];
    }
    return y;
}

} // namespace subopt::detail
