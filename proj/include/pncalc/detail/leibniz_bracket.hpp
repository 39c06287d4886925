#pragma once

#include <functional>

#include "pncalc/anti_tensor.hpp"

namespace pncalc::detail {

/// The two pieces of data that determine a Gerstenhaber bracket on the
/// exterior algebra of a Lie algebroid: the bracket of two rescaled basis
/// sections and the anchor action on functions.
struct BracketRules {
  /// [f b_i, g b_j] as a degree-1 tensor.
  std::function<AntiTensor(int i, const Polynomial& f, int j, const Polynomial& g)> basis_bracket;
  /// rho(b_i)(g).
  std::function<Polynomial(int i, const Polynomial& g)> anchor;
};

/// Extends `rules` to all degrees by graded antisymmetry and the graded
/// Leibniz rule [P, Q ^ R] = [P, Q] ^ R + (-1)^{(p-1)q} Q ^ [P, R].
/// The result has degree p + q - 1, or 0 when p = q = 0 (bracket of two
/// functions, identically zero).
AntiTensor leibniz_bracket(const AntiTensor& p, const AntiTensor& q, const BracketRules& rules);

}  // namespace pncalc::detail
