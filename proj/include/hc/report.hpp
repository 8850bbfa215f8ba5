#pragma once

#include <string>
#include <vector>

#include "hc/solver.hpp"

namespace hc::report {

// Shortest decimal string that round-trips the value, so repeated runs
// produce byte-identical files.
std::string format_double(double v);

// One row per activity: lambda, count, then (a, b, classification) per
// solution; short rows are padded to the widest one. The classification
// cell gains a "+tangency" marker on fold records.
std::string records_csv(const std::vector<solver::SweepPoint>& points);

std::string sweep_csv(const solver::SweepReport& report);

std::string classification_cell(const solver::SolutionRecord& rec);

}  // namespace hc::report
