#include <doctest.h>

#include <random>

#include "pncalc/errors.hpp"
#include "pncalc/parse.hpp"
#include "pncalc/poly_matrix.hpp"
#include "pncalc/polynomial.hpp"
#include "test_util.hpp"

using namespace pncalc;

namespace {

const Ring& r2() {
  static const Ring r = make_ring({"x1", "x2"});
  return r;
}

Polynomial P(const char* s) { return parse_polynomial(s, r2()); }

}  // namespace

TEST_CASE("rational arithmetic stays reduced") {
  const Rational a(6, -4);
  CHECK(a.to_string() == "-3/2");
  CHECK((Rational(1, 2) * Rational(2, 3)).to_string() == "1/3");
  CHECK((Rational(1, 3) + Rational(2, 3)).is_one());
  CHECK(Rational::parse("-10/4") == Rational(-5, 2));
  CHECK(Rational(0, 7).to_string() == "0");
  CHECK_THROWS_AS(Rational(1, 0), InputError);
}

TEST_CASE("ring operations") {
  CHECK(P("x1 + x2") + P("x1 - x2") == P("2*x1"));
  CHECK(P("x1 + 1") * P("x1 - 1") == P("x1^2 - 1"));
  CHECK(P("1/2*x1") * P("2/3*x2") == P("1/3*x1*x2"));
  CHECK(P("x1 + x2").pow(3) == P("x1^3 + 3*x1^2*x2 + 3*x1*x2^2 + x2^3"));
  CHECK(P("x1 - x1").is_zero());
  CHECK(P("x1 - x1").terms().empty());
  CHECK((P("x1") * Rational(0)).is_zero());
}

TEST_CASE("constants promote, mismatched rings are rejected") {
  const Ring other = make_ring({"y"});
  const Polynomial y = Polynomial::variable(other, 0);
  CHECK(P("x1") + Polynomial(3) == P("x1 + 3"));
  CHECK(Polynomial(2) * P("x2") == P("2*x2"));
  CHECK_THROWS_AS(P("x1") + y, InputError);
  CHECK_THROWS_AS(P("x1") * y, InputError);
}

TEST_CASE("partial derivatives") {
  CHECK(P("x1^2*x2").partial("x1") == P("2*x1*x2"));
  CHECK(P("x1").partial("x2").is_zero());
  CHECK(P("(x1+x2)^3").partial(0) == P("3*(x1+x2)^2"));
  CHECK_THROWS_AS(P("x1").partial("x3"), InputError);
}

TEST_CASE("parser") {
  const Polynomial p = P("1 + 2*x1^2 - 1/3*x2");
  CHECK(p.terms().size() == 3);
  CHECK(p.to_string() == "2*x1^2 - 1/3*x2 + 1");
  CHECK(P("x1*(x1+x2)") == P("x1^2 + x1*x2"));
  CHECK(P("-x1 + 2") == P("2 - x1"));
  CHECK(P("  ( x1 )^0 ") == Polynomial(1));

  SUBCASE("unknown identifier") {
    try {
      P("x3");
      FAIL("expected a ParseError");
    } catch (const ParseError& e) {
      CHECK(e.position() == 0);
      CHECK(std::string(e.what()).find("unknown identifier") != std::string::npos);
    }
  }
  SUBCASE("syntax errors carry positions") {
    try {
      P("x1 + * x2");
      FAIL("expected a ParseError");
    } catch (const ParseError& e) {
      CHECK(e.position() == 5);
    }
    CHECK_THROWS_AS(P("(x1 + x2"), ParseError);
    CHECK_THROWS_AS(P("x1 x2"), ParseError);
    CHECK_THROWS_AS(P("1/0"), ParseError);
    CHECK_THROWS_AS(P("x1^-1"), ParseError);
    CHECK_THROWS_AS(P(""), ParseError);
  }
}

TEST_CASE("canonical printing is grlex descending with explicit operators") {
  CHECK(P("x2 + x1").to_string() == "x1 + x2");
  CHECK(P("x2^2 + x1").to_string() == "x2^2 + x1");
  CHECK(P("-x1*x2 + 3/4").to_string() == "-x1*x2 + 3/4");
  CHECK(Polynomial().to_string() == "0");
  CHECK(P("-1").to_string() == "-1");
}

TEST_CASE("substitution and renaming") {
  const Ring t = make_ring({"t"});
  const Polynomial tv = Polynomial::variable(t, 0);
  const std::vector<Polynomial> images{tv + Polynomial(1), tv * tv};
  CHECK(P("x1*x2").substitute(images, t) == parse_polynomial("t^3 + t^2", t));

  const Ring big = make_ring({"a", "x2", "x1"});
  CHECK(P("x1^2 - x2").renamed_into(big) == parse_polynomial("x1^2 - x2", big));
  CHECK_THROWS_AS(P("x1").renamed_into(t), InputError);
}

TEST_CASE("matrices") {
  PolyMatrix m(r2(), 2, 2);
  m(0, 1) = P("x1");
  m(1, 0) = P("-x1");
  CHECK(m.is_antisymmetric());
  CHECK((m * m)(0, 0) == P("-x1^2"));
  CHECK(m.pow(0) == PolyMatrix::identity(r2(), 2));
  CHECK(m.transposed() == m * Polynomial(-1));
}

TEST_CASE("ring axioms and Leibniz rule on random polynomials") {
  std::mt19937 rng(11);
  const Ring ring = make_ring({"a", "b", "c"});
  for (int trial = 0; trial < 60; ++trial) {
    const Polynomial p = testutil::random_polynomial(rng, ring, 3, 4);
    const Polynomial q = testutil::random_polynomial(rng, ring, 3, 4);
    const Polynomial r = testutil::random_polynomial(rng, ring, 2, 3);
    CHECK((p + q) + r == p + (q + r));
    CHECK(p * q == q * p);
    CHECK(p * (q + r) == p * q + p * r);
    CHECK((p - p).is_zero());
    for (std::size_t v = 0; v < 3; ++v) {
      CHECK((p * q).partial(v) == p.partial(v) * q + p * q.partial(v));
      for (std::size_t w = 0; w < 3; ++w) CHECK(p.partial(v).partial(w) == p.partial(w).partial(v));
    }
    // parse(print(p)) = p
    CHECK(parse_polynomial(p.to_string(), ring) == p);
  }
}
