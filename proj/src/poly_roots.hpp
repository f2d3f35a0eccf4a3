#pragma once

// Real roots of polynomials with real coefficients, used to locate the
// critical points of the sensitivity polynomial exactly rather than by
// grid search.

#include <vector>

namespace subopt::detail {

// coeffs: c_0..c_n ascending. Returns the real roots in ascending order
// (low-degree cases in closed form, otherwise companion-matrix
// eigenvalues polished by a Newton step). An all-zero polynomial yields
// no roots.
std::vector<double> real_roots(const std::vector<double>& coeffs);

// Derivative coefficients of a polynomial given ascending coefficients.
std::vector<double> derivative_coefficients(const std::vector<double>& coeffs);

double evaluate_polynomial(const std::vector<double>& coeffs, double x);

} // namespace subopt::detail
