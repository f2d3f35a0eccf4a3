#pragma once

// JSON forms of designs and reports. Numbers are written with 17
// significant digits so a reloaded design is bit-identical; infinite
// endpoints are the strings "-inf" and "inf".

#include <string>

#include "subopt/design.hpp"
#include "subopt/optimality.hpp"

namespace subopt {

struct SolveReport;

std::string design_to_json(const SubsamplingDesign& design);
SubsamplingDesign design_from_json(const std::string& text);

SubsamplingDesign load_design_file(const std::string& path);
void save_design_file(const std::string& path, const SubsamplingDesign& design);

// Design JSON with an attached "report" object (boundaries, threshold,
// logdet, residuals, branch, iterations), the `design` subcommand output.
std::string solve_report_to_json(const SolveReport& report);

std::string equivalence_report_to_json(const EquivalenceReport& report);

} // namespace subopt
