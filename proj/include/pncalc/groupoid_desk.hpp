#pragma once

#include <vector>

#include "pncalc/poisson_nijenhuis.hpp"

namespace pncalc {

/// The pair groupoid M x M => M over a base chart. The total chart has the
/// source block x_s followed by the target block x_t, named `<coord>_s` and
/// `<coord>_t`; s(x, y) = x, t(x, y) = y, m((x, y), (y, z)) = (x, z).
class PairGroupoid {
 public:
  explicit PairGroupoid(Chart base);

  const Chart& base() const { return base_; }
  const Chart& total() const { return total_; }
  /// Three copies of the total chart, for the graph of the multiplication.
  const Chart& triple() const { return triple_; }
  std::size_t n() const { return base_.dim(); }

  /// f(x) pulled back along s (block 0) or t (block 1).
  Polynomial on_block(const Polynomial& f, int block) const;

 private:
  Chart base_;
  Chart total_;
  Chart triple_;
};

/// One affine equation sum_i coeffs[i] x^i = rhs.
struct AffineConstraint {
  std::vector<Rational> coeffs;
  Rational rhs;
  friend bool operator==(const AffineConstraint&, const AffineConstraint&) = default;
};

/// Submanifold of a chart cut out by independent affine equations with
/// rational coefficients. The free coordinates of the reduced row echelon
/// form parametrize it.
class AffineSubmanifold {
 public:
  /// Throws InputError on wrong lengths, dependent or inconsistent equations.
  AffineSubmanifold(Chart ambient, std::vector<AffineConstraint> constraints);

  const Chart& ambient() const { return ambient_; }
  const std::vector<AffineConstraint>& constraints() const { return constraints_; }
  std::size_t codim() const { return constraints_.size(); }

  /// Rational basis of TS, one vector per free coordinate.
  const std::vector<std::vector<Rational>>& tangent_basis() const { return tangent_; }
  /// Rational basis of (TS)^0: the constraint rows.
  std::vector<std::vector<Rational>> conormal_basis() const;
  /// Chart of the free coordinates.
  const Chart& parameters() const { return params_; }
  /// f restricted to S, as a polynomial in the parameters.
  Polynomial restrict(const Polynomial& f) const;

 private:
  Chart ambient_;
  std::vector<AffineConstraint> constraints_;
  std::vector<std::vector<Rational>> tangent_;
  Chart params_;
  std::vector<Polynomial> embedding_;  // ambient coordinate i as a polynomial in the parameters
};

/// N(TS) in TS: eta(N v)|_S = 0 for tangent v and conormal eta.
Check invariant_check(const TensorOneOne& n, const AffineSubmanifold& s);
/// pi#((TS)^0) in TS: eta'(pi# eta)|_S = 0 for conormal eta, eta'.
Check coisotropic_check(const MultiVector& pi, const AffineSubmanifold& s);

struct CoisotropicInvariance {
  Check coisotropic;
  Check invariant;
  /// S is coisotropic for N^k pi, k <= 2; only computed when both pass.
  Check hierarchy;
  bool ok() const { return coisotropic.ok && invariant.ok; }
};
CoisotropicInvariance coisotropic_invariant_check(const MultiVector& pi, const TensorOneOne& n,
                                                  const AffineSubmanifold& s);

// --- block constructions on the pair groupoid ---------------------------------

/// pi_s on the source block plus pi_t on the target block; pi - pi is
/// block_bivector(g, pi, -pi).
MultiVector block_bivector(const PairGroupoid& g, const MultiVector& pi_s, const MultiVector& pi_t);
/// N_s + N_t acting blockwise.
TensorOneOne block_tensor(const PairGroupoid& g, const TensorOneOne& n_s, const TensorOneOne& n_t);

/// {(x, y, y, z, x, z)} in the triple chart.
AffineSubmanifold multiplication_graph(const PairGroupoid& g);
/// The diagonal {x = y}.
AffineSubmanifold unit_space(const PairGroupoid& g);

/// Gr(m) is invariant under NG + NG + NG.
Check multiplicativity_check_tensor(const PairGroupoid& g, const TensorOneOne& ng);
/// Gr(m) is coisotropic for piG + piG + (-piG). Refuses non-Poisson piG.
Check poisson_groupoid_check(const PairGroupoid& g, const MultiVector& pi_g);

struct PNGroupoidVerdict {
  PNVerdict pn;
  Check poisson_groupoid;
  Check multiplicative;
  CoisotropicInvariance units;
  bool ok() const { return pn.ok() && poisson_groupoid.ok && multiplicative.ok && units.ok(); }
  Check combined() const;
};
PNGroupoidVerdict pn_groupoid_check(const PairGroupoid& g, const MultiVector& pi_g, const TensorOneOne& ng);

struct BaseStructure {
  MultiVector pi;
  TensorOneOne n;
  PNVerdict pn;
  Check s_related;   // s_* NG = N_M s_* and s_*(NG piG) = N_M pi_M
  Check hierarchy;   // s_*(NG^k piG) = N_M^k pi_M, k <= 2
  bool ok() const { return pn.ok() && s_related.ok && hierarchy.ok; }
};
/// Pushes (piG, NG) forward along s. Refuses unless the groupoid is PN and
/// the source blocks are independent of the target coordinates.
BaseStructure base_structure(const PairGroupoid& g, const MultiVector& pi_g, const TensorOneOne& ng);

/// The inversion (x, y) -> (y, x) is anti-PN: sigma_* piG = -piG and
/// sigma_* NG = NG sigma_*.
Check inversion_check(const PairGroupoid& g, const MultiVector& pi_g, const TensorOneOne& ng);

}  // namespace pncalc
