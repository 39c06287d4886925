#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pncalc/polynomial.hpp"

namespace pncalc {

/// A coordinate chart R^n: n distinct coordinate names, which double as the
/// variables of the coefficient ring.
class Chart {
 public:
  Chart() : ring_(make_ring({})) {}
  explicit Chart(std::vector<std::string> coords);

  /// x1..xn (or prefix1..prefixn).
  static Chart standard(std::size_t n, std::string_view prefix = "x");

  std::size_t dim() const { return ring_->size(); }
  const Ring& ring() const { return ring_; }
  const std::vector<std::string>& coords() const { return *ring_; }
  const std::string& coord(std::size_t i) const { return ring_->at(i); }

  Polynomial coordinate(std::size_t i) const { return Polynomial::variable(ring_, i); }
  Polynomial constant(const Rational& c) const { return Polynomial::constant(ring_, c); }
  Polynomial zero() const { return Polynomial(ring_); }
  Polynomial parse(std::string_view text) const;

  friend bool operator==(const Chart& a, const Chart& b) { return same_ring(a.ring_, b.ring_); }

 private:
  Ring ring_;
};

/// Throws InputError unless the two charts agree.
void require_same_chart(const Chart& a, const Chart& b, std::string_view context);

/// Picks `prefix1..prefixn`, appending underscores to the prefix until none
/// of the names clash with `taken`.
std::vector<std::string> fresh_names(std::string prefix, std::size_t n,
                                     const std::vector<std::string>& taken);

}  // namespace pncalc
