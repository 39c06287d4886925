#pragma once

#include <string>
#include <vector>

#include "pncalc/cartan.hpp"
#include "pncalc/poly_matrix.hpp"

namespace pncalc {

/// Outcome of a mathematical check: passes iff no residual survived.
struct Check {
  bool ok = true;
  std::vector<Residual> residuals;

  void absorb(std::vector<Residual> r) {
    if (!r.empty()) ok = false;
    residuals.insert(residuals.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  }
  void fail(std::string name, std::string value) {
    ok = false;
    residuals.push_back({std::move(name), std::move(value)});
  }
};

/// A (1,1)-tensor N with N(d_j) = sum_i N(i, j) d_i.
class TensorOneOne {
 public:
  TensorOneOne() = default;
  TensorOneOne(Chart chart, PolyMatrix entries);

  static TensorOneOne identity(const Chart& chart);
  static TensorOneOne zero(const Chart& chart);
  static TensorOneOne scaled_identity(const Chart& chart, const Polynomial& f);
  static TensorOneOne diagonal(const Chart& chart, const std::vector<Polynomial>& diag);

  const Chart& chart() const { return chart_; }
  const PolyMatrix& matrix() const { return entries_; }
  const Polynomial& operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

  /// N X for a vector field X.
  MultiVector apply(const MultiVector& x) const;
  /// N^* alpha, (N^* alpha)_j = sum_i alpha_i N(i, j).
  DiffForm apply_dual(const DiffForm& alpha) const;

  TensorOneOne pow(unsigned k) const;
  friend TensorOneOne operator*(const TensorOneOne& a, const TensorOneOne& b);
  friend bool operator==(const TensorOneOne& a, const TensorOneOne& b) {
    return a.chart_ == b.chart_ && a.entries_ == b.entries_;
  }

  std::vector<Residual> residuals(const std::string& name) const;

 private:
  Chart chart_;
  PolyMatrix entries_;
};

// --- bivectors and their sharp maps -----------------------------------------

/// Matrix of pi#: T*M -> TM, pi#(alpha) = pi(alpha, .), so column i is
/// pi#(dx^i). With this convention d1 ^ d2 sends dx1 to +d2.
PolyMatrix sharp_matrix(const MultiVector& pi);
MultiVector sharp(const MultiVector& pi, const DiffForm& alpha);
/// Inverse of sharp_matrix; the matrix must be antisymmetric.
MultiVector bivector_from_sharp(const Chart& chart, const PolyMatrix& sharp);

/// Passes iff [pi, pi] = 0.
Check is_poisson(const MultiVector& pi);

/// [alpha, beta]_pi = L_{pi# alpha} beta - L_{pi# beta} alpha - d(pi(alpha, beta)).
DiffForm koszul_bracket(const MultiVector& pi, const DiffForm& alpha, const DiffForm& beta);

// --- (1,1)-tensors ------------------------------------------------------------

/// Nijenhuis torsion as a vector-valued 2-form: entry k is the 2-form
/// whose (i, j) component is the d_k component of tau_N(d_i, d_j).
std::vector<DiffForm> nijenhuis_torsion(const TensorOneOne& n);
/// tau_N(X, Y) from the defining bracket formula, on arbitrary fields.
MultiVector torsion_on(const TensorOneOne& n, const MultiVector& x, const MultiVector& y);
Check is_nijenhuis(const TensorOneOne& n);

/// [X, Y]_N = [NX, Y] + [X, NY] - N[X, Y].
MultiVector deformed_bracket(const TensorOneOne& n, const MultiVector& x, const MultiVector& y);

/// Degree-0 derivation (i_N w)(X_1..X_k) = sum_i w(X_1, .., N X_i, .., X_k).
DiffForm i_n(const TensorOneOne& n, const DiffForm& omega);
/// d_N = i_N d - d i_N.
DiffForm d_n(const TensorOneOne& n, const DiffForm& omega);

// --- Poisson-Nijenhuis pairs --------------------------------------------------

/// Residual N pi# - pi# N^* (zero iff N pi is a bivector).
PolyMatrix sharp_compatibility_defect(const MultiVector& pi, const TensorOneOne& n);
/// The bivector N pi, after confirming sharp-compatibility.
/// Throws PreconditionFailure otherwise.
MultiVector compose(const TensorOneOne& n, const MultiVector& pi);

/// Magri-Morosi concomitant C(pi, N)(alpha, beta). Refuses (throws
/// PreconditionFailure) when N pi# != pi# N^*.
DiffForm magri_morosi(const MultiVector& pi, const TensorOneOne& n, const DiffForm& alpha, const DiffForm& beta);

struct PNVerdict {
  Check poisson;
  Check torsion;
  Check sharp_compat;
  Check concomitant;

  bool ok() const { return poisson.ok && torsion.ok && sharp_compat.ok && concomitant.ok; }
  Check combined() const;
};

/// All four conditions; the concomitant is checked on basis-form pairs,
/// which suffices by C-infinity bilinearity, and only when sharp
/// compatibility holds.
PNVerdict is_pn_pair(const MultiVector& pi, const TensorOneOne& n);

struct HierarchyCertificate {
  int k = 0;
  int l = 0;
  MultiVector bracket;  // [pi_k, pi_l]
};

struct Hierarchy {
  std::vector<MultiVector> bivectors;  // pi_k = N^k pi, k = 0..kmax
  std::vector<HierarchyCertificate> certificates;
  bool ok() const;
};

/// Builds pi_k = N^k pi and brackets every pair k <= l. Refuses when (pi, N)
/// is not a PN pair.
Hierarchy hierarchy(const MultiVector& pi, const TensorOneOne& n, unsigned kmax);

/// N = pi# o omega# with omega#(X) = i_X omega. Checks the Gerstenhaber
/// condition [omega, omega]_pi = 0 and i_{pi# dx^i} d omega = 0 first, and
/// re-verifies that the result forms a PN pair with pi.
TensorOneOne complementary_build(const MultiVector& pi, const DiffForm& omega);

/// Real form of a holomorphic Poisson structure pi_R + i pi_I relative to the
/// almost complex structure J: (pi_I, J) must be PN and pi_R# = J o pi_I#.
/// Refuses unless J^2 = -Id.
Check holomorphic_check(const MultiVector& pi_real, const MultiVector& pi_imag, const TensorOneOne& j);

}  // namespace pncalc
