#pragma once

#include <string>
#include <vector>

#include "pncalc/report.hpp"

namespace pncalc {

/// Acceptance criteria 1-8 over the embedded corpus, one report each, in
/// criterion order. Criteria run concurrently; failures are reported, never
/// thrown.
std::vector<Report> run_suite();

/// Criterion 9. Each runner is a suite executable linked against a library
/// with one deliberately flipped sign; the criterion passes iff every runner
/// exits nonzero with at least one failing criterion.
Report mutation_report(const std::vector<std::string>& runners);

}  // namespace pncalc
