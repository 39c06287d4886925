#pragma once

// Deliberate sign mutations, compiled only into the mutation-testing
// variants of the library. Production builds leave PNCALC_MUTATION at 0.
//   1: graded Leibniz sign in the Schouten recursion
//   2: sign of the d(pi(alpha, beta)) term of the Koszul bracket
//   3: sign of one cocycle term in the twisted Gerstenhaber bracket
#ifndef PNCALC_MUTATION
#define PNCALC_MUTATION 0
#endif

namespace pncalc::detail {

inline constexpr int kMutation = PNCALC_MUTATION;

constexpr long mutated_sign(int which) { return kMutation == which ? -1 : 1; }

}  // namespace pncalc::detail
