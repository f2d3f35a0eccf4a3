#include "newton.hpp"

#include <cmath>
#include <limits>

namespace subopt::detail {

namespace {

double max_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double e : v) m = std::max(m, std::abs(e));
    return m;
}

double merit(const std::vector<double>& f) {
    double s = 0.0;
    for (double e : f) s += e * e;
    return 0.5 * s;
}

// Gaussian elimination with partial pivoting; returns false on a
// numerically singular matrix. a is row-major n*n, destroyed in place.
bool solve_dense(std::vector<double>& a, std::vector<double>& b, int n) {
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row) {
            if (std::abs(a[static_cast<std::size_t>(row) * n + col]) >
                std::abs(a[static_cast<std::size_t>(pivot) * n + col])) {
                pivot = row;
            }
        }
        double pv = a[static_cast<std::size_t>(pivot) * n + col];
        if (std::abs(pv) < 1e-300) return false;
        if (pivot != col) {
            for (int k = col; k < n; ++k) {
                std::swap(a[static_cast<std::size_t>(col) * n + k],
                          a[static_cast<std::size_t>(pivot) * n + k]);
            }
            std::swap(b[static_cast<std::size_t>(col)], b[static_cast<std::size_t>(pivot)]);
        }
        for (int row = col + 1; row < n; ++row) {
            double f = a[static_cast<std::size_t>(row) * n + col] / pv;
            if (f == 0.0) continue;
            for (int k = col; k < n; ++k) {
                a[static_cast<std::size_t>(row) * n + k] -=
                    f * a[static_cast<std::size_t>(col) * n + k];
            }
            b[static_cast<std::size_t>(row)] -= f * b[static_cast<std::size_t>(col)];
        }
    }
    for (int row = n - 1; row >= 0; --row) {
        double s = b[static_cast<std::size_t>(row)];
        for (int k = row + 1; k < n; ++k) {
            s -= a[static_cast<std::size_t>(row) * n + k] * b[static_cast<std::size_t>(k)];
        }
        b[static_cast<std::size_t>(row)] = s / a[static_cast<std::size_t>(row) * n + row];
    }
    return true;
}

bool all_finite(const std::vector<double>& v) {
    for (double e : v) {
        if (!std::isfinite(e)) return false;
    }
    return true;
}

} // namespace

NewtonResult damped_newton(const VectorFunction& F, std::vector<double> x0,
                           const NewtonOptions& opts) {
    const int n = static_cast<int>(x0.size());
    NewtonResult result;
    result.x = std::move(x0);
    result.residuals = F(result.x);
    if (!all_finite(result.residuals)) return result;

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        result.iterations = iter;
        if (max_norm(result.residuals) <= opts.tol) {
            result.converged = true;
            return result;
        }
        // Forward-difference Jacobian, column by column.
        std::vector<double> jac(static_cast<std::size_t>(n) * n);
        bool jac_ok = true;
        for (int j = 0; j < n; ++j) {
            double h = opts.fd_step * std::max(1.0, std::abs(result.x[static_cast<std::size_t>(j)]));
            std::vector<double> xp = result.x;
            xp[static_cast<std::size_t>(j)] += h;
            std::vector<double> fp = F(xp);
            if (!all_finite(fp)) {
                jac_ok = false;
                break;
            }
            for (int i = 0; i < n; ++i) {
                jac[static_cast<std::size_t>(i) * n + j] =
                    (fp[static_cast<std::size_t>(i)] - result.residuals[static_cast<std::size_t>(i)]) / h;
            }
        }
        if (!jac_ok) return result;

        std::vector<double> step = result.residuals;
        if (!solve_dense(jac, step, n)) return result;
        for (double& s : step) s = -s;

        // Armijo backtracking on the squared residual norm.
        const double m0 = merit(result.residuals);
        double lambda = 1.0;
        bool accepted = false;
        while (lambda >= 1e-12) {
            std::vector<double> xn = result.x;
            for (int j = 0; j < n; ++j) {
                xn[static_cast<std::size_t>(j)] += lambda * step[static_cast<std::size_t>(j)];
            }
            std::vector<double> fn = F(xn);
            if (all_finite(fn) && merit(fn) <= (1.0 - 1e-4 * lambda) * m0) {
                result.x = std::move(xn);
                result.residuals = std::move(fn);
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) return result; // stalled
    }
    result.iterations = opts.max_iterations;
    result.converged = max_norm(result.residuals) <= opts.tol;
    return result;
}

} // namespace subopt::detail
