#pragma once

// Verification side of the theory: the threshold s* and the equivalence
// check that certifies a candidate design as optimal (sensitivity at
// least s* on the support, below s* off it).

#include <string>
#include <vector>

#include "subopt/design.hpp"

namespace subopt {

struct GridSpec {
    int points = 4096;
};

struct Violation {
    double x = 0.0;
    double psi = 0.0;
    // "on_support": psi dropped below the threshold inside the support.
    // "off_support": psi exceeded the threshold outside it.
    std::string side;
};

struct EquivalenceReport {
    double threshold = 0.0;
    double min_on_support = 0.0;
    double max_off_support = 0.0;
    std::vector<Violation> violations;
    int grid_points = 0;
    bool passed = false;
    double tolerance = 0.0;
};

// The level s with P(psi(X) >= s) = p, X following the full covariate
// distribution: the exact pushforward quantile of the sensitivity,
// computed by splitting psi into monotone pieces at the roots of its
// derivative and bisecting.
double pushforward_quantile_of_sensitivity(const SubsamplingDesign& design, int q, double p);

// The (1-alpha)-quantile of psi(X): the pushforward quantile at
// p = alpha. For a validated optimal design this coincides with psi at
// the support boundaries.
double threshold(const SubsamplingDesign& design, int q);

// Evaluates psi over a grid spanning quantile(1e-6)..quantile(1-1e-6),
// plus all finite support boundaries and all critical points of psi, and
// compares against the threshold with tolerance 1e-7*max(1,|s*|).
// use_parallel selects the chunked multi-thread evaluation; the serial
// path is kept as a reference and produces an identical report.
EquivalenceReport check_equivalence(const SubsamplingDesign& design, int q,
                                    const GridSpec& grid = {},
                                    bool use_parallel = true);

} // namespace subopt
