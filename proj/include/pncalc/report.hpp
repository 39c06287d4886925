#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pncalc/document.hpp"

namespace pncalc {

enum class Verdict { pass, fail, error };

/// Outcome of one command. A failing report always carries at least one
/// nonzero residual; errors carry a message instead.
struct Report {
  std::string command;
  Verdict verdict = Verdict::pass;
  std::vector<Residual> residuals;
  std::string message;
  nlohmann::json data;  // computed objects, null when there are none
  bool internal = false;  // error raised by a failed self-consistency check
  double seconds = 0;

  /// 0 pass, 1 failed check, 2 input error, 3 internal inconsistency.
  int exit_code() const;
};

/// Report for a check; throws InternalInconsistency on a failed check
/// without residuals.
Report check_report(std::string command, const Check& check);

/// Key order is canonical, so identical reports print identical bytes.
/// Timing is included only on request.
nlohmann::json report_json(const Report& r, bool timing);
std::string report_text(const Report& r, bool timing);
const char* verdict_name(Verdict v);

struct CommandOptions {
  unsigned max_order = 3;
};

struct CommandInfo {
  std::string group;  // empty for top-level commands
  std::string name;
  std::string help;
  std::function<Report(const Document&, const CommandOptions&)> run;
};

/// Every document-driven command, in the order the CLI lists them.
const std::vector<CommandInfo>& commands();

/// Runs `fn` and converts exceptions into reports: InputError becomes an
/// error, PreconditionFailure a failure with the refusing residuals,
/// InternalInconsistency an internal error. Measures wall time.
Report guarded(const std::string& command, const std::function<Report()>& fn);

}  // namespace pncalc
