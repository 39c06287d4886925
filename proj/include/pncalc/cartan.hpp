#pragma once

#include <string>
#include <vector>

#include "pncalc/anti_tensor.hpp"
#include "pncalc/chart.hpp"

namespace pncalc {

struct ContravariantTag {};
struct CovariantTag {};

/// A graded antisymmetric tensor field on a chart. The tag separates
/// multivector fields (basis d/dx^i) from differential forms (basis dx^i) so
/// that the two can never be wedged together by accident.
template <class Tag>
class Field {
 public:
  Field() = default;
  Field(Chart chart, int degree) : chart_(std::move(chart)), data_(chart_.ring(), chart_.dim(), degree) {}
  Field(Chart chart, AntiTensor data) : chart_(std::move(chart)), data_(std::move(data)) {
    if (data_.dim() != chart_.dim()) throw InputError("tensor dimension does not match chart");
  }

  static Field scalar(const Chart& chart, const Polynomial& f) {
    return Field(chart, AntiTensor::scalar(chart.ring(), chart.dim(), f.promoted(chart.ring())));
  }
  static Field basis(const Chart& chart, IndexTuple idx, const Polynomial& coef = Polynomial(1)) {
    return Field(chart, AntiTensor::basis(chart.ring(), chart.dim(), std::move(idx), coef.promoted(chart.ring())));
  }
  static Field linear(const Chart& chart, const std::vector<Polynomial>& coeffs) {
    if (coeffs.size() != chart.dim()) throw InputError("component count does not match chart dimension");
    return Field(chart, AntiTensor::linear(chart.ring(), coeffs));
  }

  const Chart& chart() const { return chart_; }
  int degree() const { return data_.degree(); }
  const AntiTensor& tensor() const { return data_; }
  Polynomial at(IndexTuple idx) const { return data_.at(std::move(idx)); }
  std::vector<Polynomial> coefficients() const { return data_.as_linear(); }
  void add(IndexTuple idx, const Polynomial& coef) { data_.add(std::move(idx), coef.promoted(chart_.ring())); }
  bool is_zero() const { return data_.is_zero(); }

  Field& operator+=(const Field& o) {
    require_same_chart(chart_, o.chart_, "addition");
    data_ += o.data_;
    return *this;
  }
  Field& operator-=(const Field& o) {
    require_same_chart(chart_, o.chart_, "subtraction");
    data_ -= o.data_;
    return *this;
  }
  Field& operator*=(const Polynomial& f) {
    data_ *= f.promoted(chart_.ring());
    return *this;
  }
  Field operator-() const { return Field(chart_, -data_); }
  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(Field a, const Polynomial& f) { return a *= f; }
  friend Field operator*(const Polynomial& f, Field a) { return a *= f; }
  friend bool operator==(const Field& a, const Field& b) { return a.chart_ == b.chart_ && a.data_ == b.data_; }

  std::vector<Residual> residuals(const std::string& name) const { return residuals_of(name, data_); }

 private:
  Chart chart_;
  AntiTensor data_;
};

using MultiVector = Field<ContravariantTag>;
using DiffForm = Field<CovariantTag>;

template <class Tag>
Field<Tag> wedge(const Field<Tag>& a, const Field<Tag>& b) {
  require_same_chart(a.chart(), b.chart(), "wedge");
  return Field<Tag>(a.chart(), wedge(a.tensor(), b.tensor()));
}

/// X(f) for a vector field X.
Polynomial apply_vector(const MultiVector& x, const Polynomial& f);

DiffForm exterior_d(const DiffForm& omega);
/// i_X omega; omega must have degree >= 1.
DiffForm interior(const MultiVector& x, const DiffForm& omega);
/// L_X = i_X d + d i_X.
DiffForm lie_derivative(const MultiVector& x, const DiffForm& omega);

/// Lie bracket of vector fields.
MultiVector lie_bracket(const MultiVector& x, const MultiVector& y);

/// Schouten-Nijenhuis bracket, normalized by
///   [X, Y] = Lie bracket, [X, f] = X(f),
///   [P, Q] = -(-1)^{(p-1)(q-1)} [Q, P],
///   [P, Q ^ R] = [P, Q] ^ R + (-1)^{(p-1)q} Q ^ [P, R].
/// Evaluated by recursion on wedge decompositions.
MultiVector schouten(const MultiVector& p, const MultiVector& q);

/// P(alpha_1, ..., alpha_k) for a degree-k multivector.
Polynomial pair(const MultiVector& p, const std::vector<DiffForm>& forms);

}  // namespace pncalc
