#pragma once

#include "pncalc/algebroid.hpp"

namespace pncalc {

struct JacobiPair {
  MultiVector pi;  // degree 2
  MultiVector e;   // degree 1, same chart

  /// Throws InputError on wrong degrees or mismatched charts.
  void validate() const;
  const Chart& chart() const { return pi.chart(); }
  friend bool operator==(const JacobiPair&, const JacobiPair&) = default;
};

/// A k-section of TM x R written as (P, Q) with deg P = k, deg Q = k - 1.
/// For k = 0, Q is the zero 0-vector and is ignored.
struct ExtendedSection {
  MultiVector p;
  MultiVector q;

  int degree() const { return p.degree(); }
  friend bool operator==(const ExtendedSection&, const ExtendedSection&) = default;
};

/// TM x R as a Lie algebroid of rank n + 1: basis (d_1..d_n, e), identity
/// anchor on the d-block, rho(e) = 0, all structure functions zero.
AlgebroidData extended_tangent(const Chart& chart);

/// (P, Q) <-> P + e ^ Q on the exterior algebra of TM x R.
AlgebroidSection to_section(const ExtendedSection& s);
ExtendedSection from_section(const Chart& chart, const AlgebroidSection& s);

/// Gerstenhaber bracket of TM x R twisted by the 1-cocycle phi = (0, 1):
///   [P, Q]^phi = [P, Q] + (-1)^{p+1} (p-1) P ^ i_phi Q - (q-1) i_phi P ^ Q.
AlgebroidSection twisted_bracket(const Chart& chart, const AlgebroidSection& p, const AlgebroidSection& q);
ExtendedSection twisted_gerstenhaber(const ExtendedSection& p, const ExtendedSection& q);

struct JacobiVerdict {
  Check schouten;  // [pi, pi] - 2 E ^ pi and [E, pi]
  Check twisted;   // [(pi, E), (pi, E)]^phi
  bool ok() const { return schouten.ok && twisted.ok; }
};

/// Both characterizations; throws InternalInconsistency if they disagree.
JacobiVerdict is_jacobi(const JacobiPair& j);

struct JacobiCompat {
  Check sum_is_jacobi;   // (pi_1 + pi_2, E_1 + E_2) is Jacobi
  Check mixed_bracket;   // [(pi_1, E_1), (pi_2, E_2)]^phi = 0
  Check jet_algebroids;  // the two 1-jet algebroids are compatible
  bool compatible() const { return sum_is_jacobi.ok && mixed_bracket.ok && jet_algebroids.ok; }
};

/// Refuses unless both pairs are Jacobi; throws InternalInconsistency if the
/// criteria disagree.
JacobiCompat jacobi_compat(const JacobiPair& j1, const JacobiPair& j2);

/// The Lie algebroid T^*M x R with basis (dx^1..dx^n, 1), anchor
/// (alpha, f) -> pi# alpha + f E and the bracket built from the phi-twisted
/// Lie derivative and differential of TM x R. Refuses non-Jacobi pairs.
AlgebroidData first_jet_algebroid(const JacobiPair& j);

/// X0 = i_phi (pi + e ^ E) = (E, 0), a 1-cocycle of the 1-jet algebroid.
/// The twisted bracket with (pi, E) is the X0-twisted differential:
///   [(pi, E), P]^phi = d_{(pi,E)} P + X0 ^ P.
AlgebroidSection jet_cocycle(const JacobiPair& j);

}  // namespace pncalc
