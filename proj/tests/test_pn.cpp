#include <doctest.h>

#include <random>

#include "pncalc/algebroid.hpp"
#include "pncalc/poisson_nijenhuis.hpp"
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
const Chart& r4() {
  static const Chart c = Chart::standard(4);
  return c;
}

MultiVector d12(const Chart& c = r2()) { return MultiVector::basis(c, {0, 1}); }

MultiVector so3() {
  const Chart& c = r3();
  MultiVector pi(c, 2);
  pi.add({0, 1}, c.parse("x3"));
  pi.add({1, 2}, c.parse("x1"));
  pi.add({2, 0}, c.parse("x2"));
  return pi;
}

DiffForm dx(const Chart& c, int i, const Polynomial& f = Polynomial(1)) { return DiffForm::basis(c, {i}, f); }
MultiVector dd(const Chart& c, int i, const Polynomial& f = Polynomial(1)) { return MultiVector::basis(c, {i}, f); }

TensorOneOne conformal(const Chart& c, const char* f) { return TensorOneOne::scaled_identity(c, c.parse(f)); }

}  // namespace

TEST_CASE("sharp map convention") {
  CHECK(sharp(d12(), dx(r2(), 0)) == dd(r2(), 1));
  CHECK(sharp(d12(), dx(r2(), 1)) == -dd(r2(), 0));
  CHECK(sharp(MultiVector(r2(), 2), dx(r2(), 0)).is_zero());
  CHECK(sharp(d12(r3()), dx(r3(), 2)).is_zero());
  CHECK(sharp_matrix(so3()).is_antisymmetric());
  CHECK(bivector_from_sharp(r3(), sharp_matrix(so3())) == so3());
  CHECK_THROWS_AS(sharp(d12(), DiffForm::basis(r2(), {0, 1})), InputError);
}

TEST_CASE("Poisson check") {
  MultiVector constant(r4(), 2);
  constant.add({0, 1}, Polynomial(3));
  constant.add({1, 3}, Polynomial(-1));
  constant.add({2, 3}, Polynomial(1));
  CHECK(is_poisson(constant).ok);
  CHECK(is_poisson(so3()).ok);

  const Chart& c = r3();
  MultiVector pi(c, 2);
  pi.add({0, 1}, c.parse("x1"));
  pi.add({1, 2}, Polynomial(1));
  pi.add({2, 0}, Polynomial(1));
  const Check v = is_poisson(pi);
  // [pi, pi] = 2 d1 ^ d2 ^ d3 here, so the check must fail with that residual.
  CHECK_FALSE(v.ok);
  REQUIRE(v.residuals.size() == 1);
  CHECK(v.residuals[0].name == "[pi,pi][1,2,3]");
  CHECK(v.residuals[0].value == "2");
}

TEST_CASE("Koszul bracket") {
  const Chart& c = r3();
  CHECK(koszul_bracket(d12(c), dx(c, 0), dx(c, 1)).is_zero());
  // [dx1, dx2]_pi = d{x1, x2} = dx3 for so(3)
  CHECK(koszul_bracket(so3(), dx(c, 0), dx(c, 1)) == dx(c, 2));
  CHECK(koszul_bracket(MultiVector(c, 2), dx(c, 0, c.parse("x2")), dx(c, 1)).is_zero());

  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = testutil::random_field<CovariantTag>(rng, c, 1, 2);
    const auto b = testutil::random_field<CovariantTag>(rng, c, 1, 2);
    CHECK(koszul_bracket(so3(), a, b) == -koszul_bracket(so3(), b, a));
  }
}

TEST_CASE("Koszul bracket satisfies Jacobi for Poisson bivectors") {
  const Chart& c = r3();
  std::mt19937 rng(17);
  for (int trial = 0; trial < 12; ++trial) {
    const Polynomial f = testutil::random_polynomial(rng, c.ring(), 2, 2);
    const DiffForm a = dx(c, trial % 3, f);
    const DiffForm b = dx(c, (trial + 1) % 3);
    const DiffForm g = dx(c, (trial + 2) % 3);
    const auto k = [&](const DiffForm& x, const DiffForm& y) { return koszul_bracket(so3(), x, y); };
    CHECK((k(k(a, b), g) + k(k(b, g), a) + k(k(g, a), b)).is_zero());
  }
}

TEST_CASE("Nijenhuis torsion") {
  CHECK(is_nijenhuis(TensorOneOne::diagonal(r2(), {Polynomial(2), Polynomial(-1)})).ok);
  CHECK(is_nijenhuis(conformal(r3(), "1 + x1*x2 - x3^2")).ok);

  PolyMatrix m(r2().ring(), 2, 2);
  m(0, 0) = r2().parse("x2");
  const TensorOneOne n(r2(), m);
  CHECK(torsion_on(n, dd(r2(), 0), dd(r2(), 1)) == dd(r2(), 0, r2().parse("x2")));
  const auto tau = nijenhuis_torsion(n);
  CHECK(tau[0] == DiffForm::basis(r2(), {0, 1}, r2().parse("x2")));
  CHECK(tau[1].is_zero());
  CHECK_FALSE(is_nijenhuis(n).ok);
}

TEST_CASE("torsion is tensorial") {
  const Chart& c = r3();
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    PolyMatrix m(c.ring(), 3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = testutil::random_polynomial(rng, c.ring(), 1, 2);
    const TensorOneOne n(c, m);
    const auto x = testutil::random_field<ContravariantTag>(rng, c, 1, 1);
    const auto y = testutil::random_field<ContravariantTag>(rng, c, 1, 1);
    const Polynomial f = testutil::random_polynomial(rng, c.ring(), 2, 2);
    CHECK(torsion_on(n, x * f, y) == torsion_on(n, x, y) * f);
    CHECK(torsion_on(n, x, y) == -torsion_on(n, y, x));
  }
}

TEST_CASE("deformed bracket") {
  const Chart& c = r2();
  const MultiVector x = dd(c, 0, c.parse("x2"));
  const MultiVector y = dd(c, 1, c.parse("x1^2"));
  CHECK(deformed_bracket(TensorOneOne::identity(c), x, y) == lie_bracket(x, y));
  CHECK(deformed_bracket(TensorOneOne::zero(c), x, y).is_zero());

  // N = diag(x2, 0): [N d1, d2] = [x2 d1, d2] = -d1, the other two terms vanish.
  const TensorOneOne n = TensorOneOne::diagonal(c, {c.parse("x2"), Polynomial(0)});
  CHECK(deformed_bracket(n, dd(c, 0), dd(c, 1)) == -dd(c, 0));

  const Polynomial f = c.parse("x1*x2 + 1");
  const TensorOneOne m = conformal(c, "1 + x1");
  CHECK(deformed_bracket(m, x, y * f) == deformed_bracket(m, x, y) * f + y * apply_vector(m.apply(x), f));
}

TEST_CASE("i_N and d_N") {
  const Chart& c = r2();
  const DiffForm w = DiffForm::basis(c, {0, 1});
  CHECK(i_n(TensorOneOne::identity(c), w) == w * Polynomial(2));
  CHECK(i_n(TensorOneOne::zero(c), w).is_zero());
  CHECK(i_n(TensorOneOne::diagonal(c, {c.parse("x1"), c.parse("x2")}), w) == w * c.parse("x1 + x2"));

  const DiffForm f = DiffForm::scalar(c, c.parse("x1^2*x2"));
  CHECK(d_n(TensorOneOne::identity(c), f) == exterior_d(f));
  CHECK(d_n(conformal(c, "3"), f) == exterior_d(f) * Polynomial(3));
  const TensorOneOne lam = conformal(c, "1 + x1*x2");
  CHECK(d_n(lam, d_n(lam, DiffForm::scalar(c, c.parse("x1")))).is_zero());
}

TEST_CASE("d_N squares to zero and matches the deformed algebroid differential") {
  const Chart& c = r3();
  std::mt19937 rng(23);
  const std::vector<TensorOneOne> tensors{conformal(c, "1 + x1"), conformal(c, "x2^2 - x3"),
                                          TensorOneOne::diagonal(c, {c.parse("x1"), c.parse("x2"), c.parse("x3")})};
  for (const auto& n : tensors) {
    REQUIRE(is_nijenhuis(n).ok);
    const AlgebroidData deformed = tangent_deformed_algebroid(n);
    for (int deg = 0; deg <= 2; ++deg) {
      const auto w = testutil::random_field<CovariantTag>(rng, c, deg, 2);
      CHECK(d_n(n, d_n(n, w)).is_zero());
      CHECK(d_n(n, w).tensor() == algebroid_differential(deformed, w.tensor()));
    }
  }
}

TEST_CASE("Magri-Morosi concomitant") {
  const Chart& c = r2();
  CHECK(magri_morosi(d12(), TensorOneOne::identity(c), dx(c, 0, c.parse("x2")), dx(c, 1)).is_zero());
  CHECK(magri_morosi(d12(), conformal(c, "5"), dx(c, 0), dx(c, 1)).is_zero());
  CHECK(magri_morosi(d12(), conformal(c, "1 + x1"), dx(c, 0), dx(c, 1)).is_zero());
  CHECK_THROWS_AS(magri_morosi(d12(), TensorOneOne::diagonal(c, {Polynomial(1), Polynomial(2)}), dx(c, 0), dx(c, 1)),
                  PreconditionFailure);
}

TEST_CASE("concomitant is C-infinity bilinear") {
  const Chart& c = r3();
  std::mt19937 rng(31);
  const std::vector<std::pair<MultiVector, TensorOneOne>> pairs{{so3(), conformal(c, "1 + x1^2")},
                                                               {so3(), conformal(c, "x1 + x2")},
                                                               {d12(c), conformal(c, "x3")}};
  for (const auto& [pi, n] : pairs)
    for (int trial = 0; trial < 4; ++trial) {
      const auto a = testutil::random_field<CovariantTag>(rng, c, 1, 1);
      const auto b = testutil::random_field<CovariantTag>(rng, c, 1, 1);
      const Polynomial f = testutil::random_polynomial(rng, c.ring(), 2, 2);
      CHECK(magri_morosi(pi, n, a * f, b) == magri_morosi(pi, n, a, b) * f);
      CHECK(magri_morosi(pi, n, a, b) == -magri_morosi(pi, n, b, a));
    }
}

TEST_CASE("PN verdicts") {
  const Chart& c = r2();
  CHECK(is_pn_pair(so3(), TensorOneOne::identity(r3())).ok());
  CHECK(is_pn_pair(d12(), conformal(c, "1 + x1")).ok());
  CHECK(is_pn_pair(MultiVector(c, 2), TensorOneOne::zero(c)).ok());

  const PNVerdict bad = is_pn_pair(d12(), TensorOneOne::diagonal(c, {Polynomial(1), Polynomial(2)}));
  CHECK(bad.poisson.ok);
  CHECK(bad.torsion.ok);
  CHECK_FALSE(bad.sharp_compat.ok);
  CHECK_FALSE(bad.ok());
  CHECK_FALSE(bad.combined().residuals.empty());

  // Conformal N on so(3): N pi is a bivector but not always compatible.
  const PNVerdict conf = is_pn_pair(so3(), conformal(r3(), "x1"));
  CHECK(conf.sharp_compat.ok);
  CHECK_FALSE(conf.concomitant.ok);
}

TEST_CASE("N squared stays sharp-compatible") {
  const std::vector<std::pair<MultiVector, TensorOneOne>> pairs{
      {d12(), conformal(r2(), "1 + x1")},
      {so3(), conformal(r3(), "2")},
      {MultiVector::basis(r4(), {0, 1}) + MultiVector::basis(r4(), {2, 3}),
       TensorOneOne::diagonal(r4(), {r4().parse("x1"), r4().parse("x1"), r4().parse("x3"), r4().parse("x3")})}};
  for (const auto& [pi, n] : pairs) {
    REQUIRE(is_pn_pair(pi, n).ok());
    CHECK(sharp_compatibility_defect(pi, n.pow(2)).is_zero());
  }
}

TEST_CASE("hierarchy") {
  const Chart& c = r2();
  const Hierarchy h = hierarchy(d12(), conformal(c, "1 + x1"), 3);
  REQUIRE(h.bivectors.size() == 4);
  CHECK(h.bivectors[3] == d12() * c.parse("(1 + x1)^3"));
  CHECK(h.certificates.size() == 10);
  CHECK(h.ok());

  const Hierarchy scaled = hierarchy(so3(), conformal(r3(), "2"), 2);
  CHECK(scaled.bivectors[2] == so3() * Polynomial(4));
  CHECK(scaled.ok());

  const MultiVector pi4 = MultiVector::basis(r4(), {0, 1}) + MultiVector::basis(r4(), {2, 3});
  const TensorOneOne n4 =
      TensorOneOne::diagonal(r4(), {r4().parse("x1"), r4().parse("x1"), r4().parse("x3"), r4().parse("x3")});
  CHECK(hierarchy(pi4, n4, 3).ok());

  CHECK_THROWS_AS(hierarchy(d12(), TensorOneOne::diagonal(c, {Polynomial(1), Polynomial(2)}), 2),
                  PreconditionFailure);
}

TEST_CASE("complementary forms") {
  const Chart& c = r2();
  CHECK(complementary_build(d12(), DiffForm(c, 2)) == TensorOneOne::zero(c));
  CHECK(complementary_build(d12(), DiffForm::basis(c, {0, 1})) == conformal(c, "-1"));
  const TensorOneOne n = complementary_build(d12(), DiffForm::basis(c, {0, 1}, c.parse("1 + x1")));
  CHECK(n == conformal(c, "-1 - x1"));
  CHECK(is_pn_pair(d12(), n).ok());
  CHECK_THROWS_AS(complementary_build(d12(), DiffForm::basis(c, {0})), InputError);
}

TEST_CASE("holomorphic Poisson structures") {
  // J on R^4 = C^2 with z_k = x_{2k-1} + i x_{2k}; pi = d_{z1} ^ d_{z2} up to scale.
  const Chart& c = r4();
  PolyMatrix jm(c.ring(), 4, 4);
  jm(1, 0) = Polynomial(1);
  jm(0, 1) = Polynomial(-1);
  jm(3, 2) = Polynomial(1);
  jm(2, 3) = Polynomial(-1);
  const TensorOneOne j(c, jm);
  const MultiVector pi_r = MultiVector::basis(c, {0, 2}) - MultiVector::basis(c, {1, 3});
  const MultiVector pi_i = -MultiVector::basis(c, {0, 3}) - MultiVector::basis(c, {1, 2});
  CHECK(holomorphic_check(pi_r, pi_i, j).ok);
  CHECK(holomorphic_check(MultiVector(c, 2), MultiVector(c, 2), j).ok);
  CHECK_FALSE(holomorphic_check(pi_i, pi_i, j).ok);
  CHECK_THROWS_AS(holomorphic_check(pi_r, pi_i, TensorOneOne::identity(c)), PreconditionFailure);

  // On R^2 the bivector d1 ^ d2 is not sharp-compatible with J, so no pair passes.
  PolyMatrix j2(r2().ring(), 2, 2);
  j2(0, 1) = Polynomial(-1);
  j2(1, 0) = Polynomial(1);
  const TensorOneOne jr2(r2(), j2);
  CHECK_THROWS_AS(bivector_from_sharp(r2(), j2 * sharp_matrix(d12())), InputError);
  CHECK_FALSE(holomorphic_check(MultiVector(r2(), 2), d12(), jr2).ok);
}
