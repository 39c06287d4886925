#include <doctest.h>

#include <random>

#include "pncalc/algebroid.hpp"
#include "test_util.hpp"

using namespace pncalc;

namespace {

const Chart& point() {
  static const Chart c{std::vector<std::string>{}};
  return c;
}
const Chart& r2() {
  static const Chart c = Chart::standard(2);
  return c;
}
const Chart& r3() {
  static const Chart c = Chart::standard(3);
  return c;
}

// [e1, e2] = e2 over a point
AlgebroidData affine_line() {
  AlgebroidData a(point(), 2);
  a.set_bracket(0, 1, {Polynomial(0), Polynomial(1)});
  return a;
}

AlgebroidData so3_algebra() {
  AlgebroidData a(point(), 3);
  a.set_bracket(0, 1, {Polynomial(0), Polynomial(0), Polynomial(1)});
  a.set_bracket(1, 2, {Polynomial(1), Polynomial(0), Polynomial(0)});
  a.set_bracket(2, 0, {Polynomial(0), Polynomial(1), Polynomial(0)});
  return a;
}

MultiVector so3() {
  const Chart& c = r3();
  MultiVector pi(c, 2);
  pi.add({0, 1}, c.parse("x3"));
  pi.add({1, 2}, c.parse("x1"));
  pi.add({2, 0}, c.parse("x2"));
  return pi;
}

MultiVector d12() { return MultiVector::basis(r2(), {0, 1}); }

TensorOneOne conformal(const Chart& c, const char* f) { return TensorOneOne::scaled_identity(c, c.parse(f)); }

}  // namespace

TEST_CASE("validation") {
  AlgebroidData abelian(r2(), 2);
  abelian.set_anchor(0, 0, Polynomial(1));
  abelian.set_anchor(1, 1, Polynomial(3));
  CHECK(algebroid_validate(abelian).ok);
  CHECK(algebroid_validate(affine_line()).ok);
  CHECK(algebroid_validate(so3_algebra()).ok);
  CHECK(algebroid_validate(AlgebroidData::tangent(r3())).ok);

  // Non-commuting anchors with a zero bracket break the anchor morphism.
  AlgebroidData broken(r2(), 2);
  broken.set_anchor(0, 0, Polynomial(1));
  broken.set_anchor(1, 1, r2().parse("x1"));
  CHECK_FALSE(algebroid_validate(broken).ok);

  // [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e1 violates Jacobi.
  AlgebroidData nonlie(point(), 3);
  nonlie.set_bracket(0, 1, {Polynomial(0), Polynomial(0), Polynomial(1)});
  nonlie.set_bracket(1, 2, {Polynomial(1), Polynomial(0), Polynomial(0)});
  nonlie.set_bracket(2, 0, {Polynomial(1), Polynomial(0), Polynomial(0)});
  CHECK_FALSE(algebroid_validate(nonlie).ok);
}

TEST_CASE("section bracket") {
  AlgebroidData a(r2(), 2);
  a.set_anchor(0, 0, Polynomial(1));
  CHECK(section_bracket(a, a.section({0}), a.section({1}, r2().parse("x1"))) == a.section({1}));
  CHECK(section_bracket(affine_line(), affine_line().section({0}), affine_line().section({1})) ==
        affine_line().section({1}));

  std::mt19937 rng(4);
  const AlgebroidData t = AlgebroidData::tangent(r2());
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = testutil::random_field<ContravariantTag>(rng, r2(), 1, 2).tensor();
    CHECK(section_bracket(t, x, x).is_zero());
  }
}

TEST_CASE("algebroid differential") {
  AlgebroidData abelian(r2(), 2);
  CHECK(algebroid_differential(abelian, abelian.section({0}, r2().parse("x1*x2"))).is_zero());

  const AlgebroidData a = affine_line();
  CHECK(algebroid_differential(a, a.section({1})) == -a.section({0, 1}));
  CHECK(algebroid_differential(a, a.section({0})).is_zero());

  std::mt19937 rng(12);
  const AlgebroidData t = AlgebroidData::tangent(r2());
  for (int deg = 0; deg <= 2; ++deg) {
    const auto w = testutil::random_field<CovariantTag>(rng, r2(), deg, 3);
    CHECK(algebroid_differential(t, w.tensor()) == exterior_d(w).tensor());
  }
}

TEST_CASE("d_A squares to zero on valid algebroids") {
  std::mt19937 rng(41);
  const std::vector<AlgebroidData> corpus{
      affine_line(), so3_algebra(), AlgebroidData::tangent(r3()), cotangent_algebroid(so3()),
      tangent_deformed_algebroid(conformal(r3(), "1 + x2^2")), cotangent_algebroid(d12() * r2().parse("1 + x1"))};
  for (const auto& a : corpus) {
    REQUIRE(algebroid_validate(a).ok);
    for (int deg = 0; deg <= 2; ++deg) {
      if (static_cast<std::size_t>(deg) > a.rank()) continue;
      AlgebroidSection w = a.zero_section(deg);
      for (int k = 0; k < 3; ++k) {
        IndexTuple idx;
        for (int j = 0; j < deg; ++j) idx.push_back(static_cast<int>(rng() % a.rank()));
        w.add(idx, a.base().dim() ? testutil::random_polynomial(rng, a.base().ring(), 2, 2)
                                  : Polynomial(static_cast<long>(rng() % 5) - 2));
      }
      CHECK(algebroid_differential(a, algebroid_differential(a, w)).is_zero());
    }
  }
}

TEST_CASE("Gerstenhaber bracket") {
  std::mt19937 rng(8);
  const AlgebroidData t = AlgebroidData::tangent(r3());
  for (int trial = 0; trial < 15; ++trial) {
    const auto p = testutil::random_field<ContravariantTag>(rng, r3(), 1 + trial % 3, 2);
    const auto q = testutil::random_field<ContravariantTag>(rng, r3(), trial % 3, 2);
    CHECK(gerstenhaber_bracket(t, p.tensor(), q.tensor()) == schouten(p, q).tensor());
  }

  AlgebroidData abelian(r2(), 2);
  CHECK(gerstenhaber_bracket(abelian, abelian.section({0, 1}, Polynomial(3)), abelian.section({1})).is_zero());

  // [w, w]_pi for w = dx1 ^ dx2 on (T^*M)_{d1 ^ d2}
  const AlgebroidData cot = cotangent_algebroid(d12());
  CHECK(gerstenhaber_bracket(cot, cot.section({0, 1}), cot.section({0, 1})).is_zero());
}

TEST_CASE("Gerstenhaber bracket satisfies graded Jacobi") {
  std::mt19937 rng(77);
  const AlgebroidData a = cotangent_algebroid(so3());
  const auto sgn = [](int e) { return Polynomial(e % 2 == 0 ? 1 : -1); };
  for (int trial = 0; trial < 12; ++trial) {
    const int p = 1 + trial % 2, q = 1 + (trial / 2) % 2, r = 1 + (trial / 4) % 2;
    const auto P = testutil::random_field<CovariantTag>(rng, r3(), p, 1, 2).tensor();
    const auto Q = testutil::random_field<CovariantTag>(rng, r3(), q, 1, 2).tensor();
    const auto R = testutil::random_field<CovariantTag>(rng, r3(), r, 1, 2).tensor();
    const auto br = [&](const AlgebroidSection& x, const AlgebroidSection& y) { return gerstenhaber_bracket(a, x, y); };
    const AlgebroidSection total = br(P, br(Q, R)) * sgn((p - 1) * (r - 1)) + br(Q, br(R, P)) * sgn((q - 1) * (p - 1)) +
                                   br(R, br(P, Q)) * sgn((r - 1) * (q - 1));
    CHECK(total.is_zero());
  }
}

TEST_CASE("cotangent and deformed algebroids") {
  const AlgebroidData zero = cotangent_algebroid(MultiVector(r2(), 2));
  CHECK(zero == AlgebroidData(r2(), 2));

  const AlgebroidData flat = cotangent_algebroid(d12());
  CHECK(flat.basis_bracket(0, 1).is_zero());
  CHECK(flat.anchor(1, 0) == Polynomial(1));
  CHECK(flat.anchor(0, 1) == Polynomial(-1));

  const AlgebroidData lie = cotangent_algebroid(so3());
  CHECK(lie.basis_bracket(0, 1) == lie.section({2}));
  CHECK(lie.basis_bracket(1, 2) == lie.section({0}));
  CHECK(algebroid_validate(lie).ok);

  MultiVector bad(r3(), 2);
  bad.add({0, 1}, r3().parse("x1"));
  bad.add({1, 2}, Polynomial(1));
  bad.add({2, 0}, Polynomial(1));
  CHECK_THROWS_AS(cotangent_algebroid(bad), PreconditionFailure);

  CHECK(tangent_deformed_algebroid(TensorOneOne::identity(r2())) == AlgebroidData::tangent(r2()));
  CHECK(tangent_deformed_algebroid(TensorOneOne::zero(r2())) == AlgebroidData(r2(), 2));
  // [d1, d2]_N = [(1+x1) d1, d2] + [d1, (1+x1) d2] = d2 for N = (1+x1) Id
  const AlgebroidData deformed = tangent_deformed_algebroid(conformal(r2(), "1 + x1"));
  CHECK(deformed.basis_bracket(0, 1) == deformed.section({1}));
  CHECK(algebroid_validate(deformed).ok);

  PolyMatrix m(r2().ring(), 2, 2);
  m(0, 0) = r2().parse("x2");
  CHECK_THROWS_AS(tangent_deformed_algebroid(TensorOneOne(r2(), m)), PreconditionFailure);
}

TEST_CASE("dual linear Poisson structures") {
  CHECK(dual_linear_poisson(AlgebroidData(r2(), 2)).is_zero());

  const MultiVector line = dual_linear_poisson(affine_line());
  const Chart& c = line.chart();
  CHECK(c.coords() == std::vector<std::string>{"xi1", "xi2"});
  CHECK(line == MultiVector::basis(c, {0, 1}, c.parse("xi2")));

  // so(3) over a point reproduces the linear bivector on R^3.
  const MultiVector lie = dual_linear_poisson(so3_algebra(), "x");
  CHECK(lie.chart() == r3());
  CHECK(lie == so3());

  // The tangent algebroid gives the canonical bivector on T^*R^2.
  const MultiVector canonical = dual_linear_poisson(AlgebroidData::tangent(r2()), "p");
  CHECK(is_poisson(canonical).ok);
  CHECK(canonical.at({0, 2}) == Polynomial(-1));

  for (const auto& a : {affine_line(), so3_algebra(), cotangent_algebroid(so3()), AlgebroidData::tangent(r2())}) {
    const MultiVector pi = dual_linear_poisson(a);
    CHECK(is_poisson(pi).ok);
    CHECK(algebroid_from_linear_poisson(a.base(), pi) == a);
  }

  MultiVector quadratic = MultiVector::basis(c, {0, 1}, c.parse("xi1*xi2"));
  CHECK_THROWS_AS(algebroid_from_linear_poisson(point(), quadratic), PreconditionFailure);
}

TEST_CASE("compatibility certificates") {
  const AlgebroidData tangent = AlgebroidData::tangent(r2());
  const AlgebroidData deformed = tangent_deformed_algebroid(conformal(r2(), "1 + x1"));
  const CompatReport trivial = compat_check(so3_algebra(), AlgebroidData(point(), 3));
  CHECK(trivial.compatible());

  const CompatReport nij = compat_check(tangent, deformed);
  CHECK(nij.compatible());
  const CompatReport diag = compat_check(
      AlgebroidData::tangent(r3()),
      tangent_deformed_algebroid(TensorOneOne::diagonal(r3(), {r3().parse("x1"), r3().parse("x2^2"), Polynomial(2)})));
  CHECK(diag.compatible());

  // Cotangent algebroids of a PN hierarchy.
  const MultiVector pi = MultiVector::basis(r2(), {0, 1});
  const Hierarchy h = hierarchy(pi, conformal(r2(), "1 + x1"), 2);
  for (std::size_t k = 0; k < h.bivectors.size(); ++k)
    for (std::size_t l = k + 1; l < h.bivectors.size(); ++l)
      CHECK(compat_check(cotangent_algebroid(h.bivectors[k]), cotangent_algebroid(h.bivectors[l])).compatible());

  // Two Poisson structures on R^3 whose sum is not Poisson.
  const MultiVector p1 = MultiVector::basis(r3(), {1, 2});
  const MultiVector p2 = MultiVector::basis(r3(), {0, 1}, r3().parse("x2"));
  REQUIRE(is_poisson(p1).ok);
  REQUIRE(is_poisson(p2).ok);
  const CompatReport incompatible = compat_check(cotangent_algebroid(p1), cotangent_algebroid(p2));
  CHECK(incompatible.agree());
  CHECK_FALSE(incompatible.compatible());

  // so(3) against the affine Lie algebra embedded as [e1, e2] = e2 in rank 3.
  AlgebroidData affine(point(), 3);
  affine.set_bracket(0, 1, {Polynomial(0), Polynomial(1), Polynomial(0)});
  const CompatReport lie = compat_check(so3_algebra(), affine);
  CHECK(lie.agree());

  CHECK_THROWS_AS(compat_check(tangent, AlgebroidData(r2(), 3)), InputError);
}

TEST_CASE("sums and pencils of compatible algebroids are algebroids") {
  const AlgebroidData a1 = AlgebroidData::tangent(r2());
  const AlgebroidData a2 = tangent_deformed_algebroid(conformal(r2(), "1 + x1"));
  REQUIRE(compat_check(a1, a2).compatible());
  for (const long lambda : {1L, -1L, 2L, 5L}) CHECK(algebroid_validate(combine(a1, a2, Rational(lambda))).ok);
  CHECK(dual_linear_poisson(combine(a1, a2, Rational(1))) == dual_linear_poisson(a1) + dual_linear_poisson(a2));

  const AlgebroidData c1 = cotangent_algebroid(so3());
  const AlgebroidData c2 = cotangent_algebroid(so3() * r3().parse("x1^2 + x2^2 + x3^2"));
  REQUIRE(compat_check(c1, c2).compatible());
  for (const long lambda : {1L, -1L, 2L, 5L}) CHECK(algebroid_validate(combine(c1, c2, Rational(lambda))).ok);
  CHECK(dual_linear_poisson(combine(c1, c2, Rational(1))) == dual_linear_poisson(c1) + dual_linear_poisson(c2));
}

TEST_CASE("Lie bialgebroids") {
  const AlgebroidData tangent = AlgebroidData::tangent(r2());
  CHECK(bialgebroid_check(tangent, AlgebroidData(r2(), 2)).ok);
  CHECK(bialgebroid_check(tangent, cotangent_algebroid(d12())).ok);
  CHECK(bialgebroid_check(cotangent_algebroid(d12()), tangent).ok);
  CHECK(bialgebroid_check(tangent_deformed_algebroid(conformal(r2(), "1 + x1")), cotangent_algebroid(d12())).ok);
  CHECK(bialgebroid_check(AlgebroidData::tangent(r3()), cotangent_algebroid(so3())).ok);
  CHECK(bialgebroid_check(cotangent_algebroid(so3()), AlgebroidData::tangent(r3())).ok);

  // Flat constant data pass even when N pi is not a bivector: every defect term has constant ingredients.
  const AlgebroidData skew = tangent_deformed_algebroid(TensorOneOne::diagonal(r2(), {Polynomial(1), Polynomial(2)}));
  CHECK(bialgebroid_check(skew, cotangent_algebroid(d12())).ok);

  // so(3) with the cobracket dual to [eps1, eps2] = eps2 is not a Lie bialgebra: D(e1, e2) = e1 ^ e3.
  AlgebroidData affine(point(), 3);
  affine.set_bracket(0, 1, {Polynomial(0), Polynomial(1), Polynomial(0)});
  const Check lie = bialgebroid_check(so3_algebra(), affine);
  CHECK_FALSE(lie.ok);
  REQUIRE_FALSE(lie.residuals.empty());
  CHECK(lie.residuals[0].name == "D(e1,e2)[1,3]");
  CHECK(lie.residuals[0].value == "1");
}

TEST_CASE("tangent-lift PN bialgebroid") {
  const PNBialgebroidVerdict id = pn_bialgebroid_check(d12(), TensorOneOne::identity(r2()));
  CHECK(id.ok());

  const PNBialgebroidVerdict zero = pn_bialgebroid_check(MultiVector(r2(), 2), conformal(r2(), "1 + x2"));
  CHECK(zero.lifted_pi.is_zero());
  CHECK(zero.ok());

  const PNBialgebroidVerdict v = pn_bialgebroid_check(d12(), conformal(r2(), "1 + x1"));
  CHECK(v.bialgebroid.ok);
  CHECK(v.deformed.ok);
  CHECK(v.lifted.ok());
  CHECK(v.base_recovery.ok);
  CHECK(v.hierarchy.ok);
  const Chart& total = v.lifted_pi.chart();
  CHECK(total.coords() == std::vector<std::string>{"x1", "x2", "v1", "v2"});
  CHECK(v.lifted_n(2, 0) == total.parse("v1"));

  CHECK(pn_bialgebroid_check(so3(), conformal(r3(), "2")).ok());
  CHECK_THROWS_AS(pn_bialgebroid_check(d12(), TensorOneOne::diagonal(r2(), {Polynomial(1), Polynomial(2)})),
                  PreconditionFailure);
}
