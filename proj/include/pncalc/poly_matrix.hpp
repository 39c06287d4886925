#pragma once

#include <cstddef>
#include <vector>

#include "pncalc/polynomial.hpp"

namespace pncalc {

/// Dense matrix of polynomials over one ring, row-major.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(Ring ring, std::size_t rows, std::size_t cols);

  static PolyMatrix identity(Ring ring, std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Ring& ring() const { return ring_; }

  Polynomial& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Polynomial& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  PolyMatrix transposed() const;
  bool is_zero() const;
  bool is_antisymmetric() const;

  PolyMatrix& operator+=(const PolyMatrix& o);
  PolyMatrix& operator-=(const PolyMatrix& o);
  PolyMatrix& operator*=(const Polynomial& f);
  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
  friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(PolyMatrix a, const Polynomial& f) { return a *= f; }
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

  PolyMatrix pow(unsigned k) const;

 private:
  Ring ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Polynomial> data_;
};

}  // namespace pncalc
