#pragma once

// Applying a design to data: stream a CSV column, keep rows whose
// covariate falls in the support, report acceptance diagnostics.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "subopt/design.hpp"

namespace subopt {

// 1 if x lies in the (closed) support, else 0.
double acceptance_probability(const SubsamplingDesign& design, double x);

enum class ErrorPolicy { abort, skip };

struct SubsampleOptions {
    // Column selector: a name (matched against the header) or a 0-based
    // index given as digits.
    std::string column = "0";
    ErrorPolicy on_error = ErrorPolicy::abort;
};

struct SubsampleStats {
    std::int64_t n_total = 0;
    std::int64_t n_accepted = 0;
    std::int64_t n_skipped = 0;
    double empirical_rate = 0.0;
    double expected_rate = 0.0;
    std::vector<std::int64_t> per_interval_counts;
    // Max absolute gap between empirical interval frequency and the
    // design's conditional interval mass.
    double ks_note = 0.0;
    bool empty_input = false;
    bool header_present = false;
};

// Single-pass filter: reads CSV rows from `in`, writes accepted rows
// unchanged (header included when detected) to `out`, returns stats.
// Malformed covariate cells follow the error policy: abort throws
// parse_error with the line number, skip counts the row and moves on.
SubsampleStats subsample_stream(std::istream& in, std::ostream& out,
                                const SubsamplingDesign& design,
                                const SubsampleOptions& options);

} // namespace subopt
