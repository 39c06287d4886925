#pragma once

#include <string>
#include <vector>

#include "pncalc/cartan.hpp"
#include "pncalc/poisson_nijenhuis.hpp"

namespace pncalc {

/// Sections of the exterior algebra of A or of A^*: an AntiTensor over the
/// basis e_1..e_r (or eps^1..eps^r) with coefficients in the base ring.
using AlgebroidSection = AntiTensor;

/// A Lie algebroid on a trivial bundle R^n x R^r given by structure functions:
///   [e_i, e_j] = sum_k c^k_ij e_k,   rho(e_i) = sum_a a^a_i d/dx^a.
class AlgebroidData {
 public:
  AlgebroidData() = default;
  /// Abelian algebroid with zero anchor.
  AlgebroidData(Chart base, std::size_t rank);

  /// TM itself: basis d_1..d_n, identity anchor, zero structure functions.
  static AlgebroidData tangent(const Chart& base);

  const Chart& base() const { return base_; }
  std::size_t rank() const { return rank_; }
  const std::vector<std::string>& basis_names() const { return names_; }
  void set_basis_names(std::vector<std::string> names);

  /// a^alpha_i
  const Polynomial& anchor(std::size_t alpha, std::size_t i) const { return anchor_(alpha, i); }
  const PolyMatrix& anchor_matrix() const { return anchor_; }
  void set_anchor(std::size_t alpha, std::size_t i, const Polynomial& value);

  /// c^k_ij
  const Polynomial& structure(std::size_t k, std::size_t i, std::size_t j) const {
    return c_[(k * rank_ + i) * rank_ + j];
  }
  /// Sets [e_i, e_j] = sum_k coeffs[k] e_k together with [e_j, e_i].
  void set_bracket(std::size_t i, std::size_t j, const std::vector<Polynomial>& coeffs);

  /// [e_i, e_j] as a degree-1 section.
  AlgebroidSection basis_bracket(std::size_t i, std::size_t j) const;
  /// rho(e_i) as a vector field on the base.
  MultiVector anchor_field(std::size_t i) const;
  /// rho(e_i)(f)
  Polynomial anchor_apply(std::size_t i, const Polynomial& f) const;

  AlgebroidSection zero_section(int degree) const;
  AlgebroidSection section(IndexTuple idx, const Polynomial& coef = Polynomial(1)) const;
  AlgebroidSection scalar(const Polynomial& f) const;

  /// (c_1 + lambda c_2, rho_1 + lambda rho_2); shapes must agree.
  friend AlgebroidData combine(const AlgebroidData& a, const AlgebroidData& b, const Rational& lambda);
  friend bool operator==(const AlgebroidData& a, const AlgebroidData& b);

 private:
  Chart base_;
  std::size_t rank_ = 0;
  std::vector<std::string> names_;
  PolyMatrix anchor_;  // n x r
  std::vector<Polynomial> c_;
};

/// Throws InputError unless base charts and ranks agree.
void require_same_shape(const AlgebroidData& a, const AlgebroidData& b, const char* context);

/// Jacobi identity on basis triples and the anchor morphism property.
Check algebroid_validate(const AlgebroidData& a);

/// [X, Y] for degree-1 sections.
AlgebroidSection section_bracket(const AlgebroidData& a, const AlgebroidSection& x, const AlgebroidSection& y);
/// Gerstenhaber bracket on sections of the exterior algebra of A, normalized
/// like the Schouten bracket with rho in place of the identity anchor.
AlgebroidSection gerstenhaber_bracket(const AlgebroidData& a, const AlgebroidSection& p, const AlgebroidSection& q);
/// d_A on sections of the exterior algebra of A^*, by the Cartan formula.
AlgebroidSection algebroid_differential(const AlgebroidData& a, const AlgebroidSection& omega);

/// The chart (x^1..x^n, xi_1..xi_r) of the total space of A^*. Fiber names
/// are `prefix1..prefixr`, renamed if they clash with base coordinates.
Chart dual_chart(const AlgebroidData& a, const std::string& prefix = "xi");

/// Fiber-linear Poisson structure on A^*: {xi_i, xi_j} = sum_k c^k_ij xi_k,
/// {xi_i, x^a} = a^a_i, {x^a, x^b} = 0. Refuses invalid algebroids.
MultiVector dual_linear_poisson(const AlgebroidData& a, const std::string& prefix = "xi");
/// Inverse of dual_linear_poisson: reads the algebroid back from a bivector
/// on (x, xi) whose first base.dim() coordinates are the base. Refuses
/// bivectors that are not fiber-linear.
AlgebroidData algebroid_from_linear_poisson(const Chart& base, const MultiVector& pi);

/// (T^*M)_pi with basis dx^1..dx^n: Koszul bracket and anchor pi#.
AlgebroidData cotangent_algebroid(const MultiVector& pi);
/// (TM)_N with basis d_1..d_n: deformed bracket and anchor N.
AlgebroidData tangent_deformed_algebroid(const TensorOneOne& n);

struct CompatReport {
  Check jacobi_theta;    // J on basis triples, Theta on basis pairs
  Check anticommutator;  // d_1 d_2 + d_2 d_1 on generators
  Check dual_poisson;    // [pi_1, pi_2] on A^*
  bool agree() const { return jacobi_theta.ok == anticommutator.ok && anticommutator.ok == dual_poisson.ok; }
  bool compatible() const { return agree() && jacobi_theta.ok; }
};

/// Three independent certificates of compatibility. Throws
/// InternalInconsistency when they disagree.
CompatReport compat_check(const AlgebroidData& a1, const AlgebroidData& a2);

/// d_*[X, Y] = [d_* X, Y] + [X, d_* Y] with d_* the differential of `astar`
/// acting on sections of the exterior algebra of A, tested on a finite
/// generating set.
Check bialgebroid_check(const AlgebroidData& a, const AlgebroidData& astar);

/// N_* = [[N, 0], [sum_k v^k d_k N, N]] on the tangent chart (x, v).
TensorOneOne tangent_lift(const TensorOneOne& n, const Chart& total);

struct PNBialgebroidVerdict {
  Check bialgebroid;        // (TM, (T^*M)_pi)
  Check deformed;           // ((TM)_N, (T^*M)_pi)
  PNVerdict lifted;         // (pi_A, N_*) on TM
  Check base_recovery;      // restriction to v = 0
  Check hierarchy;          // algebroids dual to N_*^k pi_A, k <= 2
  MultiVector lifted_pi;
  TensorOneOne lifted_n;

  bool ok() const {
    return bialgebroid.ok && deformed.ok && lifted.ok() && base_recovery.ok && hierarchy.ok;
  }
  Check combined() const;
};

/// The tangent-lift model of a PN Lie bialgebroid. Refuses unless (pi, N)
/// is a PN pair.
PNBialgebroidVerdict pn_bialgebroid_check(const MultiVector& pi, const TensorOneOne& n);

}  // namespace pncalc
