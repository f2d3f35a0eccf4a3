#include "subopt/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "newton.hpp"
#include "subopt/errors.hpp"

namespace subopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Standardized {
    CovariateDistribution dist; // loc 0, scale 1 member of the same family
    double mu;
    double sigma;
};

Standardized standardize(const CovariateDistribution& dist) {
    switch (dist.kind()) {
        case DistKind::normal:
            return {CovariateDistribution::normal(0.0, 1.0), dist.loc(), dist.scale()};
        case DistKind::exponential:
            return {CovariateDistribution::exponential(1.0), dist.loc(), dist.scale()};
        case DistKind::uniform:
            return {CovariateDistribution::uniform(-1.0, 1.0), dist.loc(), dist.scale()};
        case DistKind::student_t:
            return {CovariateDistribution::student_t(dist.dof()), dist.loc(), dist.scale()};
    }
    throw invalid_argument_error("standardize: unknown distribution kind");
}

double affine(double mu, double sigma, double x) {
    if (std::isinf(x)) return x; // sigma > 0 keeps the sign
    return mu + sigma * x;
}

// Support of a symmetric design from descending positive boundaries
// u[0] > ... > u[r-1] > 0 in standard coordinates: regions alternate
// starting from the outer tail inward, the center interval appearing
// exactly when r is even.
std::vector<Interval> alternating_support(const CovariateDistribution& sd,
                                          const std::vector<double>& u) {
    const double edge = sd.support_hi();
    const int r = static_cast<int>(u.size());
    std::vector<Interval> parts;
    for (int i = 0; i < r; i += 2) {
        double hi = (i == 0) ? edge : u[static_cast<std::size_t>(i - 1)];
        double lo = u[static_cast<std::size_t>(i)];
        parts.push_back({lo, hi});
        parts.push_back({-hi, -lo});
    }
    if (r % 2 == 0) {
        parts.push_back({-u[static_cast<std::size_t>(r - 1)], u[static_cast<std::size_t>(r - 1)]});
    }
    return parts;
}

double support_moment(const CovariateDistribution& sd, const std::vector<Interval>& parts, int k) {
    double m = 0.0;
    for (const Interval& iv : parts) m += sd.partial_moment(k, iv.lo, iv.hi);
    return m;
}

// Moment vector m_0..m_{2q} of a symmetric candidate support; odd
// moments vanish by symmetry.
std::vector<double> symmetric_moments(const CovariateDistribution& sd,
                                      const std::vector<Interval>& parts, int q) {
    std::vector<double> m(static_cast<std::size_t>(2 * q) + 1, 0.0);
    for (int k = 0; k <= 2 * q; k += 2) {
        m[static_cast<std::size_t>(k)] = support_moment(sd, parts, k);
    }
    return m;
}

// Shared tail of every solver: map the standard-coordinate support back
// through the location-scale transform, build the design, and certify it
// with the equivalence check.
SolveReport finalize_report(const CovariateDistribution& dist, double alpha, int q,
                            const Standardized& s, const std::vector<Interval>& std_parts,
                            std::vector<double> residuals, int iterations, SolveBranch branch) {
    std::vector<Interval> mapped;
    mapped.reserve(std_parts.size());
    for (const Interval& iv : std_parts) {
        mapped.push_back({affine(s.mu, s.sigma, iv.lo), affine(s.mu, s.sigma, iv.hi)});
    }
    SubsamplingDesign design(dist, alpha, IntervalUnion(std::move(mapped)), q);

    SolveReport report{design};
    report.residuals = std::move(residuals);
    report.iterations = iterations;
    report.branch = branch;
    // Free boundaries: finite endpoints that are not support edges.
    for (double b : design.support().finite_boundaries_descending()) {
        if (b == dist.support_lo() || b == dist.support_hi()) continue;
        report.boundaries.push_back(b);
    }
    report.r = static_cast<int>((report.boundaries.size() + 1) / 2);
    report.logdet = d_criterion(information_matrix(design, q));
    report.threshold = threshold(design, q);
    EquivalenceReport eq = check_equivalence(design, q, GridSpec{}, /*use_parallel=*/false);
    report.equivalence_ok = eq.passed;
    return report;
}

[[noreturn]] void throw_solver_failure(const std::string& op, const std::string& detail) {
    throw numerical_error(op + ": " + detail);
}

void require_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw invalid_argument_error("alpha must lie strictly inside (0, 1)");
    }
}

std::string residual_trace(const std::vector<double>& r) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) os << ", ";
        os << r[i];
    }
    os << "]";
    return os.str();
}

} // namespace

std::string to_string(SolveBranch branch) {
    switch (branch) {
        case SolveBranch::three_interval: return "three_interval";
        case SolveBranch::two_interval: return "two_interval";
        case SolveBranch::closed_form: return "closed_form";
        case SolveBranch::quantile: return "quantile";
    }
    return "unknown";
}

SolveReport solve_linear_symmetric(const CovariateDistribution& dist, double alpha) {
    require_alpha(alpha);
    if (!dist.symmetric()) {
        throw invalid_argument_error(
            "solve_linear_symmetric: distribution is not symmetric; use solve_linear_asymmetric");
    }
    Standardized s = standardize(dist);
    const double a = s.dist.quantile(1.0 - alpha / 2.0);
    std::vector<Interval> parts = alternating_support(s.dist, {a});

    // Residuals of the mass and first-moment conditions.
    double mass = support_moment(s.dist, parts, 0);
    double m1 = support_moment(s.dist, parts, 1);
    std::vector<double> residuals = {mass - alpha, alpha * (a + (-a)) - 2.0 * m1};

    SolveReport report = finalize_report(dist, alpha, 1, s, parts, residuals, 0, SolveBranch::quantile);
    if (!report.equivalence_ok) {
        throw_solver_failure("solve_linear_symmetric",
                             "equivalence check failed, residuals " + residual_trace(report.residuals));
    }
    return report;
}

SolveReport solve_linear_asymmetric(const CovariateDistribution& dist, double alpha) {
    require_alpha(alpha);
    Standardized s = standardize(dist);
    const CovariateDistribution& sd = s.dist;
    const double edge_lo = sd.support_lo();
    const double edge_hi = sd.support_hi();

    // Unknowns: b (upper end of the lower interval) and a > b (lower end
    // of the upper interval), with the gap kept positive via a = b + e^t.
    auto unpack = [](const std::vector<double>& t) {
        double b = t[1];
        double a = b + std::exp(t[0]);
        return std::pair<double, double>(a, b);
    };
    detail::VectorFunction F = [&](const std::vector<double>& t) -> std::vector<double> {
        auto [a, b] = unpack(t);
        double m0 = sd.partial_moment(0, -kInf, b) + sd.partial_moment(0, a, kInf);
        double m1 = sd.partial_moment(1, -kInf, b) + sd.partial_moment(1, a, kInf);
        return {m0 - alpha, alpha * (a + b) - 2.0 * m1};
    };

    const double a0 = sd.quantile(1.0 - alpha / 2.0);
    const double b0 = sd.quantile(alpha / 2.0);
    const double gap0 = a0 - b0;
    const double perturb[][2] = {{1.0, 0.0}, {1.3, 0.1}, {0.7, -0.1}, {1.8, 0.3}, {0.5, -0.3}, {1.0, 0.5}};
    detail::NewtonResult best;
    for (const auto& p : perturb) {
        std::vector<double> t0 = {std::log(gap0 * p[0]), b0 + p[1] * gap0};
        detail::NewtonResult res = detail::damped_newton(F, t0);
        if (res.converged) {
            best = res;
            break;
        }
        if (best.residuals.empty()) best = res;
    }
    if (!best.converged) {
        throw_solver_failure("solve_linear_asymmetric",
                             "Newton failed to converge, residuals " + residual_trace(best.residuals));
    }
    auto [a, b] = unpack(best.x);

    if (b <= edge_lo) {
        // Lower interval vanished into the support edge: single upper
        // tail with the full mass, and the first recentering condition
        // relaxes to an inequality checked through equivalence.
        double a_edge = sd.quantile(1.0 - alpha);
        std::vector<Interval> parts = {{a_edge, edge_hi}};
        double mass = support_moment(sd, parts, 0);
        SolveReport report = finalize_report(dist, alpha, 1, s, parts, {mass - alpha}, best.iterations,
                                             SolveBranch::two_interval);
        if (!report.equivalence_ok) {
            throw_solver_failure("solve_linear_asymmetric",
                                 "edge-clamped design failed the equivalence check");
        }
        return report;
    }

    std::vector<Interval> parts;
    if (edge_lo == -kInf) {
        parts.push_back({-kInf, b});
    } else {
        parts.push_back({edge_lo, b});
    }
    parts.push_back({a, edge_hi});
    SolveReport report = finalize_report(dist, alpha, 1, s, parts, best.residuals, best.iterations,
                                         SolveBranch::two_interval);
    if (!report.equivalence_ok) {
        throw_solver_failure("solve_linear_asymmetric",
                             "solution failed the equivalence check, residuals " +
                                 residual_trace(report.residuals));
    }
    return report;
}

namespace {

// Residuals of the quadratic three-interval system at standard-coordinate
// boundaries a > b > 0: the mass constraint and the moment identity that
// encodes equal sensitivity at a and b.
std::vector<double> quadratic_system(const CovariateDistribution& sd, double alpha,
                                     double a, double b) {
    const double edge = sd.support_hi();
    double m0 = 2.0 * sd.partial_moment(0, a, edge) + sd.partial_moment(0, -b, b);
    double m2 = 2.0 * sd.partial_moment(2, a, edge) + sd.partial_moment(2, -b, b);
    double m4 = 2.0 * sd.partial_moment(4, a, edge) + sd.partial_moment(4, -b, b);
    return {m0 - alpha, alpha * m2 * (a * a + b * b) + alpha * m4 - 3.0 * m2 * m2};
}

} // namespace

SolveReport solve_quadratic_symmetric(const CovariateDistribution& dist, double alpha) {
    require_alpha(alpha);
    if (!dist.symmetric()) {
        throw invalid_argument_error("solve_quadratic_symmetric: distribution is not symmetric");
    }
    if (!dist.moment_order_available(4)) {
        throw invalid_argument_error("solve_quadratic_symmetric: fourth moment is infinite");
    }
    Standardized s = standardize(dist);
    const CovariateDistribution& sd = s.dist;

    // Three-interval branch: log-gap coordinates keep a > b > 0.
    auto unpack = [](const std::vector<double>& t) {
        double b = std::exp(t[1]);
        double a = b + std::exp(t[0]);
        return std::pair<double, double>(a, b);
    };
    detail::VectorFunction F = [&](const std::vector<double>& t) -> std::vector<double> {
        auto [a, b] = unpack(t);
        return quadratic_system(sd, alpha, a, b);
    };

    const double a0 = sd.quantile(1.0 - alpha / 3.0);
    const double b0 = sd.quantile(0.5 + alpha / 6.0);
    const double perturb[][2] = {{1.0, 1.0}, {1.3, 0.7}, {0.7, 1.3}, {2.0, 0.4}, {0.5, 1.6}, {1.0, 0.25}};
    std::string failure_notes;
    for (const auto& p : perturb) {
        double gap = (a0 - b0) * p[0];
        double bb = b0 * p[1];
        if (!(gap > 0.0) || !(bb > 0.0)) continue;
        detail::NewtonResult res = detail::damped_newton(F, {std::log(gap), std::log(bb)});
        if (!res.converged) continue;
        auto [a, b] = unpack(res.x);
        if (b < 1e-9) break; // center interval collapsed: two-interval regime
        SolveReport report = finalize_report(dist, alpha, 2, s, alternating_support(sd, {a, b}),
                                             res.residuals, res.iterations, SolveBranch::three_interval);
        if (report.equivalence_ok) return report;
        failure_notes += " three-interval candidate (a=" + std::to_string(a) + ", b=" +
                         std::to_string(b) + ") failed equivalence;";
    }

    // Two-interval branch: pure tails at the 1-alpha/2 quantile. The
    // equivalence check enforces the relaxed center condition psi(0) <= s*.
    double a_edge = sd.quantile(1.0 - alpha / 2.0);
    std::vector<Interval> parts = alternating_support(sd, {a_edge});
    double mass = support_moment(sd, parts, 0);
    SolveReport report = finalize_report(dist, alpha, 2, s, parts, {mass - alpha}, 0,
                                         SolveBranch::two_interval);
    if (!report.equivalence_ok) {
        throw_solver_failure("solve_quadratic_symmetric",
                             "no branch passed the equivalence check;" + failure_notes);
    }
    return report;
}

SolveReport solve_uniform_quadratic_closed_form(const CovariateDistribution& dist, double alpha) {
    require_alpha(alpha);
    if (dist.kind() != DistKind::uniform) {
        throw invalid_argument_error("closed form applies to uniform distributions only");
    }
    Standardized s = standardize(dist);
    const CovariateDistribution& sd = s.dist;

    // Radical solution of the quadratic-case system on Uniform(-1,1).
    const double al = alpha;
    double inner = 45.0 - 90.0 * al + 90.0 * al * al - 75.0 * al * al * al +
                   57.0 * al * al * al * al - 27.0 * al * al * al * al * al +
                   5.0 * al * al * al * al * al * al;
    double u = 45.0 - 15.0 * al + 15.0 * al * al - 45.0 * al * al * al +
               20.0 * al * al * al * al - 4.0 * al * std::sqrt(5.0) * std::sqrt(inner);
    double a = 0.5 * (1.0 - al) + std::sqrt(u / (180.0 * (1.0 - al)));
    double b = a - (1.0 - al);
    if (!(b > 0.0 && b < a && a < 1.0)) {
        throw_solver_failure("solve_uniform_quadratic_closed_form",
                             "closed form left the feasible region 0 < b < a < 1");
    }
    std::vector<double> residuals = quadratic_system(sd, alpha, a, b);
    SolveReport report = finalize_report(dist, alpha, 2, s, alternating_support(sd, {a, b}),
                                         residuals, 0, SolveBranch::closed_form);
    if (!report.equivalence_ok) {
        throw_solver_failure("solve_uniform_quadratic_closed_form", "equivalence check failed");
    }
    return report;
}

SolveReport solve_uniform_quadratic_closed_form(double alpha) {
    return solve_uniform_quadratic_closed_form(CovariateDistribution::uniform(-1.0, 1.0), alpha);
}

double critical_alpha(const CovariateDistribution& dist) {
    if (!dist.symmetric()) {
        throw invalid_argument_error("critical_alpha: distribution must be symmetric");
    }
    if (!dist.moment_order_available(4)) {
        throw invalid_argument_error("critical_alpha: fourth moment is infinite");
    }
    Standardized s = standardize(dist);
    const CovariateDistribution& sd = s.dist;
    const double edge = sd.support_hi();

    // Sensitivity gap psi(0) - psi(a) of the two-tails design at level
    // alpha, written in a cancellation-friendly bracket. Positive gap
    // means pure tails are not optimal (the center interval is needed).
    auto gap = [&](double alpha) {
        double a = sd.quantile(1.0 - alpha / 2.0);
        double m2 = 2.0 * sd.partial_moment(2, a, edge);
        double m4 = 2.0 * sd.partial_moment(4, a, edge);
        double D = alpha * m4 - m2 * m2;
        return alpha * a * a * (3.0 * m2 * m2 - alpha * m4 - alpha * a * a * m2) / (D * m2);
    };

    // Geometric scan to bracket the sign change, then bisection.
    const double lo = 1e-4, hi = 1.0 - 1e-4;
    const int n = 64;
    const double ratio = std::pow(hi / lo, 1.0 / (n - 1));
    double prev_alpha = lo;
    double prev_gap = gap(lo);
    if (prev_gap <= 0.0) {
        throw_solver_failure("critical_alpha", "unexpected negative gap at alpha near 0");
    }
    for (int i = 1; i < n; ++i) {
        double cur_alpha = lo * std::pow(ratio, i);
        double cur_gap = gap(cur_alpha);
        if (cur_gap <= 0.0) {
            double blo = prev_alpha, bhi = cur_alpha;
            while (bhi - blo > 1e-8) {
                double mid = 0.5 * (blo + bhi);
                if (gap(mid) > 0.0) {
                    blo = mid;
                } else {
                    bhi = mid;
                }
            }
            return 0.5 * (blo + bhi);
        }
        prev_alpha = cur_alpha;
        prev_gap = cur_gap;
    }
    return 1.0; // gap positive everywhere: the center interval never vanishes
}

SolveReport solve_general_symmetric(const CovariateDistribution& dist, int q, double alpha) {
    require_alpha(alpha);
    if (q < 1) throw invalid_argument_error("solve_general_symmetric: degree must be at least 1");
    if (!dist.symmetric()) {
        throw invalid_argument_error(
            "solve_general_symmetric: only symmetric distributions are supported; "
            "for asymmetric covariates only the linear case is characterized");
    }
    if (!dist.moment_order_available(2 * q)) {
        throw invalid_argument_error("solve_general_symmetric: moment of order " +
                                     std::to_string(2 * q) + " is infinite");
    }
    Standardized s = standardize(dist);
    const CovariateDistribution& sd = s.dist;
    std::string diagnostics;

    for (int r = q; r >= 1; --r) {
        // Coordinates: u[r-1] = e^{t[r-1]}, u[i] = u[i+1] + e^{t[i]}.
        auto unpack = [r](const std::vector<double>& t) {
            std::vector<double> u(static_cast<std::size_t>(r));
            u[static_cast<std::size_t>(r - 1)] = std::exp(t[static_cast<std::size_t>(r - 1)]);
            for (int i = r - 2; i >= 0; --i) {
                u[static_cast<std::size_t>(i)] =
                    u[static_cast<std::size_t>(i + 1)] + std::exp(t[static_cast<std::size_t>(i)]);
            }
            return u;
        };
        detail::VectorFunction F = [&, r](const std::vector<double>& t) -> std::vector<double> {
            std::vector<double> u = unpack(t);
            std::vector<double> res(static_cast<std::size_t>(r), 1e6);
            try {
                std::vector<Interval> parts = alternating_support(sd, u);
                InformationMatrix M;
                M.q = q;
                M.moments = symmetric_moments(sd, parts, q);
                SensitivityEvaluator psi(M, alpha);
                res[0] = M.moments[0] - alpha;
                double psi_outer = psi(u[0]);
                for (int j = 1; j < r; ++j) {
                    res[static_cast<std::size_t>(j)] = psi_outer - psi(u[static_cast<std::size_t>(j)]);
                }
            } catch (const std::exception&) {
                // Degenerate iterate; large residuals push Newton back.
            }
            return res;
        };

        // Seed boundaries from an equal-mass walk: each in-support piece
        // carries mass alpha/(r+1), each gap (1-alpha)/r.
        const double beta = alpha / (r + 1);
        const double gamma = (1.0 - alpha) / r;
        const double shrink[] = {1.0, 0.95, 0.85, 1.03, 0.7, 0.9};
        for (double f : shrink) {
            std::vector<double> probs(static_cast<std::size_t>(r));
            double p = 1.0 - beta;
            for (int k = 0; k < r; ++k) {
                double adjusted = 0.5 + (p - 0.5) * f;
                probs[static_cast<std::size_t>(k)] = std::min(std::max(adjusted, 0.5 + 1e-9), 1.0 - 1e-12);
                p -= (k % 2 == 0) ? gamma : beta;
            }
            std::vector<double> u0(static_cast<std::size_t>(r));
            bool ok = true;
            for (int k = 0; k < r; ++k) {
                u0[static_cast<std::size_t>(k)] = sd.quantile(probs[static_cast<std::size_t>(k)]);
                if (k > 0 && !(u0[static_cast<std::size_t>(k)] < u0[static_cast<std::size_t>(k - 1)])) ok = false;
                if (!(u0[static_cast<std::size_t>(k)] > 0.0)) ok = false;
            }
            if (!ok) continue;
            std::vector<double> t0(static_cast<std::size_t>(r));
            t0[static_cast<std::size_t>(r - 1)] = std::log(u0[static_cast<std::size_t>(r - 1)]);
            for (int i = 0; i < r - 1; ++i) {
                t0[static_cast<std::size_t>(i)] =
                    std::log(u0[static_cast<std::size_t>(i)] - u0[static_cast<std::size_t>(i + 1)]);
            }

            detail::NewtonResult res = detail::damped_newton(F, t0);
            if (!res.converged) continue;
            std::vector<double> u = unpack(res.x);
            if (u[static_cast<std::size_t>(r - 1)] < 1e-9) break; // innermost boundary collapsed; smaller r
            bool distinct = true;
            for (int i = 0; i + 1 < r; ++i) {
                if (u[static_cast<std::size_t>(i)] - u[static_cast<std::size_t>(i + 1)] < 1e-12) distinct = false;
            }
            if (!distinct) continue;

            std::vector<Interval> parts = alternating_support(sd, u);
            SolveBranch branch = (parts.size() == 2) ? SolveBranch::two_interval
                                                     : SolveBranch::three_interval;
            try {
                SolveReport report =
                    finalize_report(dist, alpha, q, s, parts, res.residuals, res.iterations, branch);
                if (report.equivalence_ok) return report;
                diagnostics += " r=" + std::to_string(r) + ": candidate failed equivalence (residuals " +
                               residual_trace(report.residuals) + ");";
            } catch (const std::exception& e) {
                diagnostics += " r=" + std::to_string(r) + ": " + e.what() + ";";
            }
        }
    }
    throw_solver_failure("solve_general_symmetric", "no interval count validated;" + diagnostics);
}

SolveReport solve_optimal(const CovariateDistribution& dist, int q, double alpha) {
    if (q < 1) throw invalid_argument_error("solve_optimal: degree must be at least 1");
    if (q == 1) {
        return dist.symmetric() ? solve_linear_symmetric(dist, alpha)
                                : solve_linear_asymmetric(dist, alpha);
    }
    if (!dist.symmetric()) {
        throw invalid_argument_error(
            "solve_optimal: no solver available for asymmetric covariates at degree " +
            std::to_string(q) + "; only the linear case is characterized");
    }
    if (q == 2) {
        return dist.kind() == DistKind::uniform ? solve_uniform_quadratic_closed_form(dist, alpha)
                                                : solve_quadratic_symmetric(dist, alpha);
    }
    return solve_general_symmetric(dist, q, alpha);
}

} // namespace subopt
