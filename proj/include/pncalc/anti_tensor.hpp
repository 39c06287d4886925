#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pncalc/errors.hpp"
#include "pncalc/polynomial.hpp"

namespace pncalc {

/// Strictly increasing 0-based index tuple.
using IndexTuple = std::vector<int>;

/// Sorts `idx` in place and returns the sign of the sorting permutation, or
/// 0 when an index repeats.
int sort_with_sign(IndexTuple& idx);

/// Totally antisymmetric tensor of fixed degree over an index range
/// {0..dim-1}, with polynomial coefficients, stored sparsely on strictly
/// increasing index tuples: T = sum_I T_I b_I with b_I = b_{i1} ^ ... ^ b_{ik}.
///
/// This is the shared storage for multivector fields, differential forms and
/// exterior powers of algebroid sections; the basis b_i is whatever the owner
/// says it is.
class AntiTensor {
 public:
  using Components = std::map<IndexTuple, Polynomial>;

  AntiTensor() = default;
  AntiTensor(Ring ring, std::size_t dim, int degree);

  static AntiTensor scalar(Ring ring, std::size_t dim, const Polynomial& f);
  /// coef * b_{idx[0]} ^ b_{idx[1]} ^ ..., idx in any order.
  static AntiTensor basis(Ring ring, std::size_t dim, IndexTuple idx, const Polynomial& coef);
  /// Degree-1 tensor with the given coefficient list (length dim).
  static AntiTensor linear(Ring ring, std::span<const Polynomial> coeffs);

  const Ring& ring() const { return ring_; }
  std::size_t dim() const { return dim_; }
  int degree() const { return degree_; }
  const Components& components() const { return comps_; }

  /// Coefficient at `idx`, any order (sign applied), zero if absent.
  Polynomial at(IndexTuple idx) const;
  /// Coefficient list of a degree-1 tensor.
  std::vector<Polynomial> as_linear() const;

  /// Adds coef * b_idx; idx in any order, repeated indices contribute nothing.
  void add(IndexTuple idx, const Polynomial& coef);

  bool is_zero() const { return comps_.empty(); }

  AntiTensor& operator+=(const AntiTensor& o);
  AntiTensor& operator-=(const AntiTensor& o);
  AntiTensor& operator*=(const Polynomial& f);
  AntiTensor operator-() const;
  friend AntiTensor operator+(AntiTensor a, const AntiTensor& b) { return a += b; }
  friend AntiTensor operator-(AntiTensor a, const AntiTensor& b) { return a -= b; }
  friend AntiTensor operator*(AntiTensor a, const Polynomial& f) { return a *= f; }
  friend AntiTensor operator*(const Polynomial& f, AntiTensor a) { return a *= f; }
  friend bool operator==(const AntiTensor& a, const AntiTensor& b);

  AntiTensor map_coefficients(const std::function<Polynomial(const Polynomial&)>& fn) const;

 private:
  void check_compatible(const AntiTensor& o) const;

  Ring ring_;
  std::size_t dim_ = 0;
  int degree_ = 0;
  Components comps_;
};

AntiTensor wedge(const AntiTensor& a, const AntiTensor& b);

/// Contraction with a covector (or vector) c: the degree -1 antiderivation
/// with i_c(b_j) = c_j.
AntiTensor contract(std::span<const Polynomial> c, const AntiTensor& t);

/// Full evaluation T(a_1, ..., a_k) against k dual linear objects:
/// sum_I T_I det[a_r(i_s)].
Polynomial evaluate(const AntiTensor& t, std::span<const std::vector<Polynomial>> args);

/// One Residual per nonzero component, named `name[i,j,...]` with 1-based
/// indices.
std::vector<Residual> residuals_of(const std::string& name, const AntiTensor& t);

/// "i,j,k" with 1-based indices; the empty tuple prints as "".
std::string index_key(const IndexTuple& idx);

}  // namespace pncalc
