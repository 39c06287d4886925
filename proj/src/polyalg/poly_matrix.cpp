#include "pncalc/poly_matrix.hpp"

#include <algorithm>

#include "pncalc/errors.hpp"

namespace pncalc {

PolyMatrix::PolyMatrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, Polynomial(ring_)) {}

PolyMatrix PolyMatrix::identity(Ring ring, std::size_t n) {
  PolyMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Polynomial::constant(ring, Rational(1));
  return m;
}

PolyMatrix PolyMatrix::transposed() const {
  PolyMatrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

bool PolyMatrix::is_antisymmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if (!((*this)(i, j) + (*this)(j, i)).is_zero()) return false;
  return true;
}

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

PolyMatrix& PolyMatrix::operator-=(const PolyMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

PolyMatrix& PolyMatrix::operator*=(const Polynomial& f) {
  for (auto& p : data_) p *= f;
  return *this;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) throw InputError("matrix shape mismatch");
  PolyMatrix c(a.ring_ ? a.ring_ : b.ring_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Polynomial& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
    }
  return c;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

PolyMatrix PolyMatrix::pow(unsigned k) const {
  if (rows_ != cols_) throw InputError("power of a non-square matrix");
  PolyMatrix result = identity(ring_, rows_);
  for (unsigned i = 0; i < k; ++i) result = result * *this;
  return result;
}

}  // namespace pncalc
