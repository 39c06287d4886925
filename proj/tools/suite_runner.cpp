// Runs criteria 1-8 and exits 1 if any of them fails. Built once per
// mutated library variant for the mutation-sensitivity criterion.

#include <iostream>

#include "pncalc/suite.hpp"

int main() {
  int code = 0;
  for (const auto& r : pncalc::run_suite()) {
    std::cout << r.command << ": " << pncalc::verdict_name(r.verdict) << "\n";
    for (const auto& res : r.residuals) std::cout << "  " << res.name << " = " << res.value << "\n";
    if (r.verdict != pncalc::Verdict::pass) code = 1;
  }
  return code;
}
