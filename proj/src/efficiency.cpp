#include "subopt/efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "subopt/errors.hpp"
#include "subopt/parallel.hpp"
#include "subopt/solver.hpp"

namespace subopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

EfficiencyPoint evaluate_point(const CovariateDistribution& dist, int q,
                               ReferenceFamily family, double alpha) {
    EfficiencyPoint point;
    point.alpha = alpha;
    point.design_id = to_string(family);
    SolveReport opt = solve_optimal(dist, q, alpha);

    InformationMatrix candidate;
    switch (family) {
        case ReferenceFamily::uniform_random:
            candidate = uniform_random_design_info(dist, q, alpha);
            break;
        case ReferenceFamily::iboss_two_tail:
            candidate = information_matrix(iboss_two_tail(dist, alpha), q);
            break;
        case ReferenceFamily::iboss_three_piece:
            candidate = information_matrix(iboss_three_piece(dist, alpha), q);
            break;
    }
    point.logdet = d_criterion(candidate);
    point.logdet_opt = opt.logdet;
    point.efficiency = std::exp((point.logdet - point.logdet_opt) / candidate.dim());
    return point;
}

} // namespace

ReferenceFamily parse_family(const std::string& name) {
    if (name == "uniform_random") return ReferenceFamily::uniform_random;
    if (name == "iboss_two_tail") return ReferenceFamily::iboss_two_tail;
    if (name == "iboss_three_piece") return ReferenceFamily::iboss_three_piece;
    throw invalid_argument_error("unknown reference family: " + name);
}

std::string to_string(ReferenceFamily family) {
    switch (family) {
        case ReferenceFamily::uniform_random: return "uniform_random";
        case ReferenceFamily::iboss_two_tail: return "iboss_two_tail";
        case ReferenceFamily::iboss_three_piece: return "iboss_three_piece";
    }
    return "unknown";
}

InformationMatrix uniform_random_design_info(const CovariateDistribution& dist,
                                             int q, double alpha) {
    if (q < 1) throw invalid_argument_error("degree must be at least 1");
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw invalid_argument_error("alpha must lie in (0, 1]");
    }
    if (!dist.moment_order_available(2 * q)) {
        throw invalid_argument_error("moment of order " + std::to_string(2 * q) + " is infinite");
    }
    InformationMatrix M;
    M.q = q;
    M.moments.resize(static_cast<std::size_t>(2 * q) + 1);
    for (int k = 0; k <= 2 * q; ++k) {
        M.moments[static_cast<std::size_t>(k)] = alpha * dist.raw_moment(k);
    }
    return M;
}

double efficiency(const InformationMatrix& candidate_info,
                  const InformationMatrix& optimal_info, int p) {
    if (p < 1) throw invalid_argument_error("efficiency: p must be positive");
    if (candidate_info.dim() != p || optimal_info.dim() != p) {
        throw invalid_argument_error("efficiency: information matrices do not match p");
    }
    double ld_c = d_criterion(candidate_info);
    double ld_o = d_criterion(optimal_info);
    return std::exp((ld_c - ld_o) / p);
}

SubsamplingDesign iboss_two_tail(const CovariateDistribution& dist, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw invalid_argument_error("alpha must lie strictly inside (0, 1)");
    }
    double lo_cut = dist.quantile(alpha / 2.0);
    double hi_cut = dist.quantile(1.0 - alpha / 2.0);
    std::vector<Interval> parts = {{dist.support_lo(), lo_cut}, {hi_cut, dist.support_hi()}};
    return SubsamplingDesign(dist, alpha, IntervalUnion(std::move(parts)), 1);
}

SubsamplingDesign iboss_three_piece(const CovariateDistribution& dist, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw invalid_argument_error("alpha must lie strictly inside (0, 1)");
    }
    if (!dist.symmetric()) {
        throw invalid_argument_error("three-piece reference design requires a symmetric distribution");
    }
    if (alpha / 3.0 < 1e-12) {
        throw invalid_argument_error("alpha too small: three-piece intervals degenerate");
    }
    double lo_cut = dist.quantile(alpha / 3.0);
    double hi_cut = dist.quantile(1.0 - alpha / 3.0);
    double mid_lo = dist.quantile(0.5 - alpha / 6.0);
    double mid_hi = dist.quantile(0.5 + alpha / 6.0);
    std::vector<Interval> parts = {{dist.support_lo(), lo_cut},
                                   {mid_lo, mid_hi},
                                   {hi_cut, dist.support_hi()}};
    return SubsamplingDesign(dist, alpha, IntervalUnion(std::move(parts)), 2);
}

std::vector<EfficiencyPoint> efficiency_curve(const CovariateDistribution& dist, int q,
                                              ReferenceFamily family,
                                              const std::vector<double>& alphas,
                                              bool use_parallel) {
    std::vector<EfficiencyPoint> curve(alphas.size());
    parallel_for(alphas.size(), [&](std::size_t i) {
        try {
            curve[i] = evaluate_point(dist, q, family, alphas[i]);
        } catch (const std::exception& e) {
            curve[i].alpha = alphas[i];
            curve[i].design_id = to_string(family);
            curve[i].failed = true;
            curve[i].note = e.what();
        }
    }, use_parallel);
    return curve;
}

CurveMinimum refine_curve_minimum(const CovariateDistribution& dist, int q,
                                  ReferenceFamily family,
                                  const std::vector<EfficiencyPoint>& curve) {
    std::size_t best = curve.size();
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (curve[i].failed) continue;
        if (best == curve.size() || curve[i].efficiency < curve[best].efficiency) best = i;
    }
    if (best == curve.size()) {
        throw numerical_error("refine_curve_minimum: every point of the curve failed");
    }

    auto eff_at = [&](double alpha) {
        return evaluate_point(dist, q, family, alpha).efficiency;
    };

    // Bracket with the nearest non-failed neighbors (or the grid point
    // itself when it sits on the edge of the grid).
    double lo = curve[best].alpha;
    double hi = curve[best].alpha;
    for (std::size_t i = best; i-- > 0;) {
        if (!curve[i].failed) {
            lo = curve[i].alpha;
            break;
        }
    }
    for (std::size_t i = best + 1; i < curve.size(); ++i) {
        if (!curve[i].failed) {
            hi = curve[i].alpha;
            break;
        }
    }
    double best_alpha = curve[best].alpha;
    double best_eff = curve[best].efficiency;
    if (hi - lo < 1e-12) return {best_alpha, best_eff};

    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = eff_at(c);
    double fd = eff_at(d);
    while (b - a > 1e-6) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = eff_at(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = eff_at(d);
        }
        if (fc < best_eff) {
            best_eff = fc;
            best_alpha = c;
        }
        if (fd < best_eff) {
            best_eff = fd;
            best_alpha = d;
        }
    }
    return {best_alpha, best_eff};
}

} // namespace subopt
