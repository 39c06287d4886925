#pragma once

// Independent reference computations used to cross-check the main library.
// Nothing in the production code path depends on this module.

#include "pncalc/cartan.hpp"

namespace pncalc::oracle {

/// Schouten bracket from the closed coordinate formula, treating d/dx^i as
/// odd variables theta_i:
///   [P, Q] = sum_i (P <d/dtheta_i) ^ d_i Q - (-1)^{(p-1)(q-1)} (Q <d/dtheta_i) ^ d_i P
/// where <d/dtheta_i is the right derivative.
MultiVector schouten_coordinate(const MultiVector& p, const MultiVector& q);

}  // namespace pncalc::oracle
