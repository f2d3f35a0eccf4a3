#pragma once

// D-efficiency of candidate designs against the optimal one, the two
// reference families from the subsampling literature (uniform random
// subsampling and IBOSS-style quantile designs), and efficiency curves
// over a grid of proportions.

#include <string>
#include <vector>

#include "subopt/design.hpp"

namespace subopt {

enum class ReferenceFamily { uniform_random, iboss_two_tail, iboss_three_piece };

ReferenceFamily parse_family(const std::string& name);
std::string to_string(ReferenceFamily family);

struct EfficiencyPoint {
    double alpha = 0.0;
    std::string design_id;
    double efficiency = 0.0;
    double logdet = 0.0;
    double logdet_opt = 0.0;
    bool failed = false;
    std::string note;
};

// alpha times the full-population information matrix (raw moments).
InformationMatrix uniform_random_design_info(const CovariateDistribution& dist,
                                             int q, double alpha);

// (det candidate / det optimal)^(1/p), evaluated in log space.
double efficiency(const InformationMatrix& candidate_info,
                  const InformationMatrix& optimal_info, int p);

// Tails beyond the alpha/2 and 1-alpha/2 quantiles (clamped to support).
SubsamplingDesign iboss_two_tail(const CovariateDistribution& dist, double alpha);

// Proportion alpha/3 from each tail and from around the median; requires
// a symmetric distribution.
SubsamplingDesign iboss_three_piece(const CovariateDistribution& dist, double alpha);

// One efficiency point per alpha, solving the optimal design per alpha.
// Failed solves are marked on the point instead of aborting the sweep.
// use_parallel enables the multi-threaded sweep; results are merged in
// input order either way.
std::vector<EfficiencyPoint> efficiency_curve(const CovariateDistribution& dist, int q,
                                              ReferenceFamily family,
                                              const std::vector<double>& alphas,
                                              bool use_parallel = true);

struct CurveMinimum {
    double alpha_min = 0.0;
    double eff_min = 0.0;
};

// Golden-section refinement of the curve minimum around the smallest grid
// value.
CurveMinimum refine_curve_minimum(const CovariateDistribution& dist, int q,
                                  ReferenceFamily family,
                                  const std::vector<EfficiencyPoint>& curve);

} // namespace subopt
