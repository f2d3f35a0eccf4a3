#include "subopt/quadrature.hpp"

#include <cmath>
#include <queue>
#include <vector>

#include "subopt/errors.hpp"

namespace subopt {

namespace {

// 7-point Gauss / 15-point Kronrod pair on [-1,1]. Nodes are the
// nonnegative half; the rule is symmetric.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

// Gauss weights for nodes kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
    double lo, hi;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment evaluate_segment(const std::function<double(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double result_gauss = 0.0;
    double result_kronrod = 0.0;
    for (int j = 0; j < 8; ++j) {
        double fsum;
        if (j == 7) {
            fsum = f(center);
        } else {
            fsum = f(center - half * kXgk[j]) + f(center + half * kXgk[j]);
        }
        result_kronrod += kWgk[j] * fsum;
        if (j % 2 == 1) {
            result_gauss += kWg[j / 2] * fsum;
        }
    }
    result_kronrod *= half;
    result_gauss *= half;
    return Segment{lo, hi, result_kronrod, std::abs(result_kronrod - result_gauss)};
}

QuadratureResult integrate_finite(const std::function<double(double)>& f,
                                  double lo, double hi,
                                  const QuadratureOptions& opts) {
    std::priority_queue<Segment> queue;
    Segment first = evaluate_segment(f, lo, hi);
    double total_value = first.value;
    double total_error = first.error;
    queue.push(first);
    int subdivisions = 0;

    while (total_error > std::max(opts.abs_tol, opts.rel_tol * std::abs(total_value))) {
        if (subdivisions >= opts.max_subdivisions) {
            throw numerical_error("integrate: failed to reach tolerance after " +
                                  std::to_string(subdivisions) + " subdivisions");
        }
        if (queue.empty()) break;
        Segment worst = queue.top();
        queue.pop();
        total_value -= worst.value;
        total_error -= worst.error;
        double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            // Interval no longer splittable in double precision; accept its
            // value as exact and stop tracking its error.
            total_value += worst.value;
            continue;
        }
        Segment left = evaluate_segment(f, worst.lo, mid);
        Segment right = evaluate_segment(f, mid, worst.hi);
        total_value += left.value + right.value;
        total_error += left.error + right.error;
        queue.push(left);
        queue.push(right);
        ++subdivisions;
    }
    return QuadratureResult{total_value, total_error, subdivisions};
}

// Map [c, +inf) to t in [0,1) via x = c + t/(1-t^2).
QuadratureResult integrate_upper_halfline(const std::function<double(double)>& f,
                                          double c, const QuadratureOptions& opts) {
    auto g = [&f, c](double t) {
        double om = 1.0 - t * t;
        double x = c + t / om;
        double jac = (1.0 + t * t) / (om * om);
        double fx = f(x);
        return std::isfinite(fx) ? fx * jac : 0.0;
    };
    return integrate_finite(g, 0.0, 1.0, opts);
}

} // namespace

QuadratureResult integrate(const std::function<double(double)>& f,
                           double lo, double hi,
                           const QuadratureOptions& opts) {
    if (std::isnan(lo) || std::isnan(hi)) {
        throw invalid_argument_error("integrate: NaN endpoint");
    }
    if (lo >= hi) {
        if (lo == hi) return QuadratureResult{0.0, 0.0, 0};
        throw invalid_argument_error("integrate: lower endpoint exceeds upper");
    }
    const bool lo_inf = std::isinf(lo);
    const bool hi_inf = std::isinf(hi);
    if (!lo_inf && !hi_inf) {
        return integrate_finite(f, lo, hi, opts);
    }
    if (lo_inf && hi_inf) {
        QuadratureResult a = integrate(f, 0.0, hi, opts);
        QuadratureResult b = integrate(f, lo, 0.0, opts);
        return QuadratureResult{a.value + b.value, a.error_estimate + b.error_estimate,
                                a.subdivisions + b.subdivisions};
    }
    if (hi_inf) {
        return integrate_upper_halfline(f, lo, opts);
    }
    // (-inf, hi]: reflect through the endpoint.
    auto reflected = [&f, hi](double x) { return f(2.0 * hi - x); };
    return integrate_upper_halfline(reflected, hi, opts);
}

} // namespace subopt
