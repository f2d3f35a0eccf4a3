#include "subopt/optimality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "poly_roots.hpp"
#include "subopt/errors.hpp"
#include "subopt/parallel.hpp"

namespace subopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// The sensitivity polynomial split into monotone pieces at the real
// roots of its derivative, ready for level-set queries.
struct MonotonePieces {
    SensitivityEvaluator psi;
    std::vector<double> cuts; // ascending finite critical points

    explicit MonotonePieces(SensitivityEvaluator evaluator)
        : psi(std::move(evaluator)),
          cuts(detail::real_roots(detail::derivative_coefficients(psi.coefficients()))) {}
};

// x with psi(x) = s inside [lo, hi] where psi is monotone and the level
// is bracketed; plain bisection.
double solve_level(const SensitivityEvaluator& psi, double lo, double hi, double s) {
    double flo = psi(lo) - s;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        double fm = psi(mid) - s;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-13 * std::max(1.0, std::abs(mid))) break;
    }
    return 0.5 * (lo + hi);
}

// Probability mass of {x : psi(x) >= s} under the covariate distribution.
double mass_above(const MonotonePieces& pieces, const CovariateDistribution& dist, double s) {
    std::vector<double> bounds;
    bounds.push_back(dist.support_lo());
    for (double c : pieces.cuts) {
        if (c > dist.support_lo() && c < dist.support_hi()) bounds.push_back(c);
    }
    bounds.push_back(dist.support_hi());

    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        double a = bounds[i], b = bounds[i + 1];
        if (!(a < b)) continue;
        // Endpoint values; infinite ends diverge to +inf (even degree,
        // positive leading coefficient).
        double va = std::isinf(a) ? kInf : pieces.psi(a);
        double vb = std::isinf(b) ? kInf : pieces.psi(b);
        const bool increasing = vb >= va;
        double level_lo = std::min(va, vb), level_hi = std::max(va, vb);
        if (level_hi < s) continue; // piece entirely below the level
        double cut_lo, cut_hi;
        if (level_lo >= s) {
            // Piece entirely at or above the level.
            cut_lo = a;
            cut_hi = b;
        } else {
            // Exactly one crossing; bracket any infinite end first.
            double flo = a, fhi = b;
            if (std::isinf(flo)) {
                flo = std::isfinite(b) ? b - 1.0 : -1.0;
                for (int k = 0; k < 200 && pieces.psi(flo) < s; ++k) flo = 2.0 * flo - fhi;
            }
            if (std::isinf(fhi)) {
                fhi = std::isfinite(a) ? a + 1.0 : 1.0;
                for (int k = 0; k < 200 && pieces.psi(fhi) < s; ++k) fhi = 2.0 * fhi - flo;
            }
            double x = solve_level(pieces.psi, flo, fhi, s);
            if (increasing) {
                cut_lo = x;
                cut_hi = b;
            } else {
                cut_lo = a;
                cut_hi = x;
            }
        }
        if (cut_lo < cut_hi) {
            mass += dist.partial_moment(0, cut_lo, cut_hi);
        }
    }
    return mass;
}

} // namespace

double pushforward_quantile_of_sensitivity(const SubsamplingDesign& design, int q, double p) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw invalid_argument_error("pushforward quantile: p must lie in (0, 1]");
    }
    MonotonePieces pieces{SensitivityEvaluator(information_matrix(design, q), design.alpha())};
    const CovariateDistribution& dist = design.dist();

    // Initial bracket: psi evaluated at critical points and at far
    // quantiles bounds the relevant level range.
    std::vector<double> probes = pieces.cuts;
    probes.push_back(dist.quantile(1e-12));
    probes.push_back(dist.quantile(1.0 - 1e-12));
    double lo = kInf, hi = -kInf;
    for (double x : probes) {
        if (x <= dist.support_lo() || x >= dist.support_hi()) continue;
        double v = pieces.psi(x);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!std::isfinite(lo)) lo = 0.0;
    if (!std::isfinite(hi)) hi = 1.0;
    lo -= 1.0;
    hi += 1.0;
    // mass_above(lo) = 1 >= p; mass_above(hi) <= 2e-12 < p.
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        if (mass_above(pieces, dist, mid) >= p) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-12 * std::max(1.0, std::abs(mid))) break;
    }
    return 0.5 * (lo + hi);
}

double threshold(const SubsamplingDesign& design, int q) {
    return pushforward_quantile_of_sensitivity(design, q, design.alpha());
}

EquivalenceReport check_equivalence(const SubsamplingDesign& design, int q,
                                    const GridSpec& grid, bool use_parallel) {
    if (grid.points < 2) throw invalid_argument_error("check_equivalence: need at least 2 grid points");
    EquivalenceReport report;
    report.threshold = threshold(design, q);
    report.tolerance = 1e-7 * std::max(1.0, std::abs(report.threshold));

    SensitivityEvaluator psi(information_matrix(design, q), design.alpha());
    const CovariateDistribution& dist = design.dist();

    // Evaluation set: a uniform grid over the central quantile range,
    // every finite support boundary, and every critical point of psi.
    double xlo = dist.quantile(1e-6);
    double xhi = dist.quantile(1.0 - 1e-6);
    std::vector<double> points;
    points.reserve(static_cast<std::size_t>(grid.points) + 16);
    for (int i = 0; i < grid.points; ++i) {
        points.push_back(xlo + (xhi - xlo) * i / (grid.points - 1.0));
    }
    for (const Interval& iv : design.support().parts()) {
        if (std::isfinite(iv.lo)) points.push_back(iv.lo);
        if (std::isfinite(iv.hi)) points.push_back(iv.hi);
    }
    for (double c : detail::real_roots(detail::derivative_coefficients(psi.coefficients()))) {
        if (c > dist.support_lo() && c < dist.support_hi()) points.push_back(c);
    }

    const int n = static_cast<int>(points.size());
    std::vector<double> values(points.size());
    parallel_for(n, [&](int i) { values[static_cast<std::size_t>(i)] = psi(points[static_cast<std::size_t>(i)]); },
                 use_parallel);

    // Deterministic serial reduction in point order.
    report.grid_points = n;
    report.min_on_support = kInf;
    report.max_off_support = -kInf;
    for (int i = 0; i < n; ++i) {
        double x = points[static_cast<std::size_t>(i)];
        double v = values[static_cast<std::size_t>(i)];
        if (design.support().contains(x)) {
            report.min_on_support = std::min(report.min_on_support, v);
            if (v < report.threshold - report.tolerance) {
                report.violations.push_back(Violation{x, v, "on_support"});
            }
        } else {
            report.max_off_support = std::max(report.max_off_support, v);
            if (v > report.threshold + report.tolerance) {
                report.violations.push_back(Violation{x, v, "off_support"});
            }
        }
    }
    report.passed = report.violations.empty();
    return report;
}

} // namespace subopt
