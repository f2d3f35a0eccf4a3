#pragma once

// Adaptive Gauss-Kronrod integration used by the distribution layer for
// moments that have no closed form. Endpoints may be infinite; half-lines
// are mapped to [0,1) by a rational change of variable and a doubly
// infinite range is split at zero.

#include <functional>

namespace subopt {

struct QuadratureOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 4000;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions = 0;
};

// Integrate f over [lo, hi]; lo may be -inf and hi may be +inf. Throws
// subopt::numerical_error if the error target cannot be met within the
// subdivision budget.
QuadratureResult integrate(const std::function<double(double)>& f,
                           double lo, double hi,
                           const QuadratureOptions& opts = {});

} // namespace subopt
