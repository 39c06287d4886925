#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "pncalc/cartan.hpp"
#include "test_util.hpp"

using namespace pncalc;

namespace {

const Chart& r2() {
  static const Chart c = Chart::standard(2);
  return c;
}
const Chart& r3() {
  static const Chart c = Chart::standard(3);
  return c;
}

MultiVector so3() {
  const Chart& c = r3();
  MultiVector pi(c, 2);
  pi.add({0, 1}, c.parse("x3"));
  pi.add({1, 2}, c.parse("x1"));
  pi.add({2, 0}, c.parse("x2"));
  return pi;
}

int sgn_pow(int e) { return e % 2 == 0 ? 1 : -1; }

}  // namespace

TEST_CASE("wedge") {
  const Chart& c = r2();
  CHECK(wedge(MultiVector::basis(c, {0}), MultiVector::basis(c, {1})) == MultiVector::basis(c, {0, 1}));
  CHECK(wedge(DiffForm::basis(c, {0}), DiffForm::basis(c, {0})).is_zero());
  CHECK(wedge(MultiVector::basis(c, {0}, c.parse("x1")), MultiVector::basis(c, {1}, c.parse("x2"))) ==
        MultiVector::basis(c, {0, 1}, c.parse("x1*x2")));
  CHECK(MultiVector::basis(c, {1, 0}) == -MultiVector::basis(c, {0, 1}));
  CHECK_THROWS_AS(wedge(DiffForm::basis(c, {0}), DiffForm::basis(r3(), {0})), InputError);
}

TEST_CASE("exterior derivative") {
  const Chart& c = r2();
  CHECK(exterior_d(DiffForm::basis(c, {1}, c.parse("x1"))) == DiffForm::basis(c, {0, 1}));
  CHECK(exterior_d(DiffForm::basis(c, {0})).is_zero());
  CHECK(exterior_d(DiffForm::scalar(c, c.parse("x1*x2"))) ==
        DiffForm::basis(c, {0}, c.parse("x2")) + DiffForm::basis(c, {1}, c.parse("x1")));
}

TEST_CASE("interior product") {
  const Chart& c = r3();
  const DiffForm dx12 = DiffForm::basis(c, {0, 1});
  CHECK(interior(MultiVector::basis(c, {0}), dx12) == DiffForm::basis(c, {1}));
  CHECK(interior(MultiVector::basis(c, {2}), dx12).is_zero());
  CHECK(interior(MultiVector::basis(c, {0}, c.parse("x2")), DiffForm::basis(c, {0})) ==
        DiffForm::scalar(c, c.parse("x2")));
  CHECK_THROWS_AS(interior(MultiVector::basis(c, {0}), DiffForm::scalar(c, c.parse("x1"))), InputError);
}

TEST_CASE("Lie derivative") {
  const Chart& c = r2();
  CHECK(lie_derivative(MultiVector::basis(c, {0}), DiffForm::basis(c, {1}, c.parse("x1"))) ==
        DiffForm::basis(c, {1}));
  CHECK(lie_derivative(MultiVector::basis(c, {0}), DiffForm::basis(c, {0})).is_zero());
  // L_{x1 d1} dx1 = d(i_{x1 d1} dx1) = d(x1) = dx1
  CHECK(lie_derivative(MultiVector::basis(c, {0}, c.parse("x1")), DiffForm::basis(c, {0})) ==
        DiffForm::basis(c, {0}));
}

TEST_CASE("Schouten bracket examples") {
  const Chart& c = r3();
  CHECK(schouten(MultiVector::basis(c, {0}), MultiVector::basis(c, {0}, c.parse("x1"))) ==
        MultiVector::basis(c, {0}));
  MultiVector constant_p = MultiVector::basis(c, {0, 1}, Polynomial(3)) + MultiVector::basis(c, {1, 2});
  MultiVector constant_q = MultiVector::basis(c, {0}, Polynomial(-2));
  CHECK(schouten(constant_p, constant_q).is_zero());
  CHECK(schouten(constant_p, constant_p).is_zero());
  CHECK(schouten(so3(), so3()).is_zero());
  CHECK(oracle::schouten_coordinate(so3(), so3()).is_zero());
  // [X, f] = X(f) and [f, g] = 0
  const MultiVector f = MultiVector::scalar(c, c.parse("x1*x2"));
  CHECK(schouten(MultiVector::basis(c, {0}, c.parse("x3")), f) == MultiVector::scalar(c, c.parse("x2*x3")));
  CHECK(schouten(f, f).is_zero());
  // [d1 ^ d2, x1] = -d2, i.e. [pi, f] = -pi#(df)
  CHECK(schouten(MultiVector::basis(c, {0, 1}), MultiVector::scalar(c, c.parse("x1"))) ==
        -MultiVector::basis(c, {1}));
}

TEST_CASE("Schouten axioms and oracle agreement on random inputs") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 80; ++trial) {
    const Chart c = Chart::standard(2 + trial % 3);
    std::uniform_int_distribution<int> deg(0, std::min<int>(3, static_cast<int>(c.dim())));
    const int p = deg(rng);
    const int q = deg(rng);
    const int r = std::uniform_int_distribution<int>(0, 2)(rng);
    const auto P = testutil::random_field<ContravariantTag>(rng, c, p, 3);
    const auto Q = testutil::random_field<ContravariantTag>(rng, c, q, 3);
    const auto R = testutil::random_field<ContravariantTag>(rng, c, r, 2);
    CAPTURE(trial);
    CHECK(schouten(P, Q) == oracle::schouten_coordinate(P, Q));
    // graded antisymmetry
    CHECK(schouten(P, Q) == schouten(Q, P) * Polynomial(-sgn_pow((p - 1) * (q - 1))));
    // graded Leibniz in the second slot
    if (p >= 1) {
      const MultiVector lhs = schouten(P, wedge(Q, R));
      const MultiVector rhs = wedge(schouten(P, Q), R) + wedge(Q, schouten(P, R)) * Polynomial(sgn_pow((p - 1) * q));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("graded Jacobi identity") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const Chart c = Chart::standard(3);
    std::uniform_int_distribution<int> deg(1, 3);
    const int p = deg(rng), q = deg(rng), r = deg(rng);
    const auto P = testutil::random_field<ContravariantTag>(rng, c, p, 2, 2);
    const auto Q = testutil::random_field<ContravariantTag>(rng, c, q, 2, 2);
    const auto R = testutil::random_field<ContravariantTag>(rng, c, r, 2, 2);
    const MultiVector total = schouten(P, schouten(Q, R)) * Polynomial(sgn_pow((p - 1) * (r - 1))) +
                              schouten(Q, schouten(R, P)) * Polynomial(sgn_pow((q - 1) * (p - 1))) +
                              schouten(R, schouten(P, Q)) * Polynomial(sgn_pow((r - 1) * (q - 1)));
    CAPTURE(trial);
    CHECK(total.is_zero());
  }
}

TEST_CASE("d squared vanishes, d is a derivation, L_X commutes with d") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const Chart c = Chart::standard(3);
    std::uniform_int_distribution<int> deg(0, 3);
    const int k = deg(rng), l = deg(rng);
    const auto a = testutil::random_field<CovariantTag>(rng, c, k, 3);
    const auto b = testutil::random_field<CovariantTag>(rng, c, l, 3);
    const auto x = testutil::random_field<ContravariantTag>(rng, c, 1, 2);
    CHECK(exterior_d(exterior_d(a)).is_zero());
    CHECK(exterior_d(wedge(a, b)) == wedge(exterior_d(a), b) + wedge(a, exterior_d(b)) * Polynomial(sgn_pow(k)));
    CHECK(lie_derivative(x, exterior_d(a)) == exterior_d(lie_derivative(x, a)));
  }
}

TEST_CASE("pairing") {
  const Chart& c = r2();
  const MultiVector pi = MultiVector::basis(c, {0, 1});
  CHECK(pair(pi, {DiffForm::basis(c, {0}), DiffForm::basis(c, {1})}) == Polynomial(1));
  CHECK(pair(pi, {DiffForm::basis(c, {1}), DiffForm::basis(c, {0})}) == Polynomial(-1));
}
