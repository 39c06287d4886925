#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pncalc/rational.hpp"

namespace pncalc {

/// Ordered list of variable names shared by every polynomial of one ring.
using Ring = std::shared_ptr<const std::vector<std::string>>;

Ring make_ring(std::vector<std::string> names);
bool same_ring(const Ring& a, const Ring& b);

using Exponents = std::vector<unsigned>;

/// Graded lexicographic order: total degree first, then lexicographic with
/// the first variable most significant.
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// The term map never holds a zero coefficient, so two polynomials over the
/// same ring are equal iff their term maps are equal. A polynomial without a
/// ring is a constant; it is promoted silently when combined with a ringed
/// polynomial.
class Polynomial {
 public:
  using Terms = std::map<Exponents, Rational, GrlexLess>;

  Polynomial() = default;
  Polynomial(Rational constant);  // NOLINT(google-explicit-constructor)
  Polynomial(long constant) : Polynomial(Rational(constant)) {}  // NOLINT
  explicit Polynomial(Ring ring) : ring_(std::move(ring)) {}

  static Polynomial constant(Ring ring, const Rational& c);
  static Polynomial variable(Ring ring, std::size_t index);
  static Polynomial monomial(Ring ring, Exponents exps, const Rational& c);

  const Ring& ring() const { return ring_; }
  std::size_t num_vars() const { return ring_ ? ring_->size() : 0; }
  const Terms& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  /// -1 for the zero polynomial.
  int total_degree() const;
  /// Largest exponent of `var` appearing in any term.
  unsigned degree_in(std::size_t var) const;

  /// Same polynomial re-expressed over `ring`, which must be this ring, or
  /// any ring when this polynomial is constant.
  Polynomial promoted(const Ring& ring) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  Polynomial operator-() const;

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

  Polynomial pow(unsigned exponent) const;

  Polynomial partial(std::size_t var) const;
  Polynomial partial(std::string_view var) const;

  /// Replace variable i by images[i]; images share one target ring.
  Polynomial substitute(std::span<const Polynomial> images, const Ring& target) const;

  /// Re-express over `target` by matching variable names. Every variable
  /// with a nonzero exponent must exist in `target`.
  Polynomial renamed_into(const Ring& target) const;

  /// Canonical text: terms in descending graded-lex order, explicit `*` and
  /// `^`, rational coefficients as p/q. Zero prints as "0".
  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void add_term(const Exponents& e, const Rational& c);
  Ring unify(const Polynomial& o) const;

  Ring ring_;
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

/// Index of `name` in `ring`, or throws InputError.
std::size_t variable_index(const Ring& ring, std::string_view name);

}  // namespace pncalc
