#include "pncalc/chart.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "pncalc/errors.hpp"
#include "pncalc/parse.hpp"

namespace pncalc {

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

Chart::Chart(std::vector<std::string> coords) {
  std::set<std::string> seen;
  for (const auto& c : coords) {
    if (!is_identifier(c)) throw InputError("invalid coordinate name '" + c + "'");
    if (!seen.insert(c).second) throw InputError("duplicate coordinate name '" + c + "'");
  }
  ring_ = make_ring(std::move(coords));
}

Chart Chart::standard(std::size_t n, std::string_view prefix) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  return Chart(std::move(names));
}

Polynomial Chart::parse(std::string_view text) const { return parse_polynomial(text, ring_); }

void require_same_chart(const Chart& a, const Chart& b, std::string_view context) {
  if (!(a == b)) throw InputError(std::string(context) + ": chart mismatch");
}

std::vector<std::string> fresh_names(std::string prefix, std::size_t n,
                                     const std::vector<std::string>& taken) {
  for (;;) {
    std::vector<std::string> out;
    bool clash = false;
    for (std::size_t i = 1; i <= n && !clash; ++i) {
      out.push_back(prefix + std::to_string(i));
      clash = std::find(taken.begin(), taken.end(), out.back()) != taken.end();
    }
    if (!clash) return out;
    prefix += '_';
  }
}

}  // namespace pncalc
