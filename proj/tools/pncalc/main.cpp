#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "pncalc/suite.hpp"

using namespace pncalc;

namespace {

std::vector<std::string> mutant_runners() {
  std::vector<std::string> out;
#ifdef PNCALC_MUTANT_DIR
  for (int m = 1; m <= 3; ++m) out.push_back(std::string(PNCALC_MUTANT_DIR) + "/pncalc_suite_mut" + std::to_string(m));
#endif
  return out;
}

Document load(const std::string& path) {
  if (path.empty()) throw InputError("missing --input FILE");
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream text;
  text << in.rdbuf();
  return parse_document(text.str());
}

int emit(const std::vector<Report>& reports, bool as_json, bool timing) {
  int code = 0;
  for (const auto& r : reports) code = std::max(code, r.exit_code());
  if (as_json) {
    nlohmann::json out;
    if (reports.size() == 1) {
      out = report_json(reports[0], timing);
    } else {
      out = nlohmann::json::array();
      for (const auto& r : reports) out.push_back(report_json(r, timing));
    }
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& r : reports) std::cout << report_text(r, timing);
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact symbolic checks for Poisson-Nijenhuis structures, Lie algebroids and pair groupoids"};
  app.require_subcommand(1);
  std::string input;
  bool as_json = false;
  bool timing = false;
  CommandOptions options;
  app.add_option("--input", input, "JSON document");
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_flag("--timing", timing, "report wall time per command");

  std::map<std::string, CLI::App*> groups;
  std::vector<std::pair<CLI::App*, const CommandInfo*>> leaves;
  for (const auto& c : commands()) {
    CLI::App* parent = &app;
    if (!c.group.empty()) {
      auto [it, fresh] = groups.try_emplace(c.group, nullptr);
      if (fresh) {
        it->second = app.add_subcommand(c.group, c.group + " commands");
        it->second->require_subcommand(1);
        it->second->fallthrough();
      }
      parent = it->second;
    }
    CLI::App* sub = parent->add_subcommand(c.name, c.help);
    sub->fallthrough();
    if (c.name == "hierarchy") sub->add_option("--max-order", options.max_order, "largest power of N (default 3)");
    leaves.emplace_back(sub, &c);
  }
  CLI::App* suite = app.add_subcommand("suite", "run every acceptance criterion on the embedded corpus");
  suite->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (suite->parsed()) {
    std::vector<Report> reports = run_suite();
    const auto runners = mutant_runners();
    if (!runners.empty()) reports.push_back(mutation_report(runners));
    return emit(reports, as_json, timing);
  }
  for (const auto& [sub, info] : leaves) {
    if (!sub->parsed()) continue;
    const std::string name = info->group.empty() ? info->name : info->group + " " + info->name;
    const Report r = guarded(name, [&, info = info] { return info->run(load(input), options); });
    return emit({r}, as_json, timing);
  }
  return 2;
}
