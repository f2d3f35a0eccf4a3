#include "poly_roots.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace subopt::detail {

double evaluate_polynomial(const std::vector<double>& coeffs, double x) {
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        v = v * x + coeffs[k];
    }
    return v;
}

std::vector<double> derivative_coefficients(const std::vector<double>& coeffs) {
    std::vector<double> d;
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        d.push_back(static_cast<double>(k) * coeffs[k]);
    }
    return d;
}

std::vector<double> real_roots(const std::vector<double>& coeffs) {
    // Trim negligible leading coefficients (relative to the largest).
    double max_abs = 0.0;
    for (double c : coeffs) max_abs = std::max(max_abs, std::abs(c));
    if (max_abs == 0.0) return {};
    std::size_t n = coeffs.size();
    while (n > 1 && std::abs(coeffs[n - 1]) <= 1e-14 * max_abs) --n;
    const int degree = static_cast<int>(n) - 1;

    std::vector<double> roots;
    if (degree <= 0) {
        return roots;
    }
    if (degree == 1) {
        roots.push_back(-coeffs[0] / coeffs[1]);
        return roots;
    }
    if (degree == 2) {
        double a = coeffs[2], b = coeffs[1], c = coeffs[0];
        double disc = b * b - 4.0 * a * c;
        if (disc < 0.0) return roots;
        double sq = std::sqrt(disc);
        // Stable pairing: avoid subtracting nearly equal quantities.
        double qv = -0.5 * (b + (b >= 0.0 ? sq : -sq));
        roots.push_back(qv / a);
        if (qv != 0.0) {
            roots.push_back(c / qv);
        } else {
            roots.push_back(0.0);
        }
        std::sort(roots.begin(), roots.end());
        return roots;
    }

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
    for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < degree; ++i) {
        companion(i, degree - 1) = -coeffs[static_cast<std::size_t>(i)] / coeffs[n - 1];
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    const auto& vals = solver.eigenvalues();
    const std::vector<double> trimmed(coeffs.begin(), coeffs.begin() + static_cast<long>(n));
    const std::vector<double> deriv = derivative_coefficients(trimmed);
    for (int i = 0; i < vals.size(); ++i) {
        double re = vals[i].real(), im = vals[i].imag();
        if (std::abs(im) > 1e-8 * std::max(1.0, std::abs(re))) continue;
        // A couple of Newton polish steps against the original polynomial.
        for (int it = 0; it < 2; ++it) {
            double p = evaluate_polynomial(trimmed, re);
            double dp = evaluate_polynomial(deriv, re);
            if (dp == 0.0) break;
            double step = p / dp;
            if (!std::isfinite(step)) break;
            re -= step;
        }
        roots.push_back(re);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace subopt::detail
