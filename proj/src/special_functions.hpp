#pragma once

// Internal scalar special functions used by the distribution layer.
// Everything here is double precision, checked against independently
// computed reference values in the unit tests.

namespace subopt::detail {

double norm_pdf(double x);
double norm_cdf(double x);
double norm_sf(double x); // upper tail, 1 - cdf, accurate for large x
// Inverse of norm_cdf. Rational initial estimate polished with Halley
// steps; relative error near machine precision over (0,1).
double norm_quantile(double p);

// Regularized incomplete beta I_x(a,b), continued fraction evaluation.
double incomplete_beta(double a, double b, double x);

double student_t_pdf(double x, double nu);
double student_t_cdf(double x, double nu);
double student_t_quantile(double p, double nu);

} // namespace subopt::detail
