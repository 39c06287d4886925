#include "pncalc/suite.hpp"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <functional>
#include <future>
#include <random>

#include "oracle.hpp"
#include "pncalc/algebroid.hpp"
#include "pncalc/groupoid_desk.hpp"
#include "pncalc/jacobi.hpp"

namespace pncalc {

namespace {

// --- corpus --------------------------------------------------------------------

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
const Chart& r4() {
  static const Chart c = Chart::standard(4);
  return c;
}
const Chart& xyz() {
  static const Chart c{std::vector<std::string>{"x", "y", "z"}};
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

TensorOneOne conformal(const Chart& c, const char* f) { return TensorOneOne::scaled_identity(c, c.parse(f)); }

TensorOneOne diagonal(const Chart& c, std::initializer_list<const char*> entries) {
  std::vector<Polynomial> d;
  for (const char* e : entries) d.push_back(c.parse(e));
  return TensorOneOne::diagonal(c, d);
}

struct PNPair {
  std::string name;
  MultiVector pi;
  TensorOneOne n;
};

/// Base PN pairs; the second is built from the complementary form
/// (1 + x1) dx1 ^ dx2.
std::vector<PNPair> pn_corpus() {
  return {
      {"(d1^d2, (1+x1)Id)", d12(), conformal(r2(), "1 + x1")},
      {"(d1^d2, complementary)", d12(), complementary_build(d12(), DiffForm::basis(r2(), {0, 1}, r2().parse("1 + x1")))},
      {"(so3, 2Id)", so3(), conformal(r3(), "2")},
      {"(d1^d2, diag(x1+x2,x1+x2,x3))", d12(r3()), diagonal(r3(), {"x1 + x2", "x1 + x2", "x3"})},
      {"(d1^d2+d3^d4, diag(x1,x1,x3,x3))", MultiVector::basis(r4(), {0, 1}) + MultiVector::basis(r4(), {2, 3}),
       diagonal(r4(), {"x1", "x1", "x3", "x3"})},
  };
}

std::vector<TensorOneOne> nijenhuis_corpus() {
  std::vector<TensorOneOne> out;
  for (const auto& p : pn_corpus()) out.push_back(p.n);
  out.push_back(diagonal(r3(), {"x1", "x2^2", "2"}));
  out.push_back(diagonal(r2(), {"x1^2 + 1", "x2"}));
  return out;
}

AlgebroidData so3_algebra() {
  AlgebroidData a(point(), 3);
  a.set_bracket(0, 1, {Polynomial(0), Polynomial(0), Polynomial(1)});
  a.set_bracket(1, 2, {Polynomial(1), Polynomial(0), Polynomial(0)});
  a.set_bracket(2, 0, {Polynomial(0), Polynomial(1), Polynomial(0)});
  return a;
}

MultiVector dd(const Chart& c, int i, const char* f = "1") { return MultiVector::basis(c, {i}, c.parse(f)); }

JacobiPair contact() { return {wedge(dd(xyz(), 1), dd(xyz(), 0) + dd(xyz(), 2, "y")), dd(xyz(), 2)}; }

// --- random inputs -------------------------------------------------------------

Polynomial random_polynomial(std::mt19937& rng, const Ring& ring, int max_degree, int max_terms) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<std::size_t> var(0, ring->size() - 1);
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<long> num(-4, 4);
  std::uniform_int_distribution<long> den(1, 3);
  Polynomial p(ring);
  const int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    Exponents e(ring->size(), 0);
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) ++e[var(rng)];
    p += Polynomial::monomial(ring, e, Rational(num(rng), den(rng)));
  }
  return p;
}

AntiTensor random_tensor(std::mt19937& rng, const Ring& ring, std::size_t dim, int degree, int coeff_degree) {
  AntiTensor t(ring, dim, degree);
  std::uniform_int_distribution<int> ncomp(1, 3);
  std::uniform_int_distribution<int> idx(0, static_cast<int>(dim) - 1);
  const int n = ncomp(rng);
  for (int c = 0; c < n; ++c) {
    IndexTuple tuple;
    for (int k = 0; k < degree; ++k) tuple.push_back(idx(rng));
    t.add(tuple, random_polynomial(rng, ring, coeff_degree, 2));
  }
  return t;
}

MultiVector random_multivector(std::mt19937& rng, const Chart& c, int degree, int coeff_degree) {
  return MultiVector(c, random_tensor(rng, c.ring(), c.dim(), degree, coeff_degree));
}

// --- bookkeeping ---------------------------------------------------------------

/// Records a named failure when `ok` is false.
void expect(Check& check, bool ok, const std::string& name, const std::string& value = "false") {
  if (!ok) check.fail(name, value);
}

/// Runs one sub-case; exceptions become named failures.
void sub(Check& check, const std::string& name, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    check.fail(name, std::string("exception: ") + e.what());
  }
}

int sign_pow(int e) { return e % 2 == 0 ? 1 : -1; }

// --- criteria ------------------------------------------------------------------

Check schouten_oracle() {
  Check check;
  std::mt19937 rng(20240611);
  int agreed = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const Chart c = Chart::standard(2 + trial % 3);
    const int cap = static_cast<int>(c.dim());
    const int p = std::uniform_int_distribution<int>(0, std::min(cap, 3))(rng);
    const int q = std::uniform_int_distribution<int>(0, std::min({cap, 3, 5 - p}))(rng);
    const MultiVector a = random_multivector(rng, c, p, 3);
    const MultiVector b = random_multivector(rng, c, q, 3);
    sub(check, "trial " + std::to_string(trial), [&] {
      const MultiVector diff = schouten(a, b) - oracle::schouten_coordinate(a, b);
      check.absorb(diff.residuals("Leibniz-oracle trial " + std::to_string(trial)));
      agreed += diff.is_zero() ? 1 : 0;
    });
  }
  expect(check, agreed >= 100, "oracle agreements", std::to_string(agreed));
  for (int trial = 0; trial < 30; ++trial) {
    const Chart& c = r3();
    std::uniform_int_distribution<int> deg(1, 3);
    const int p = deg(rng), q = deg(rng), r = deg(rng);
    const MultiVector a = random_multivector(rng, c, p, 2);
    const MultiVector b = random_multivector(rng, c, q, 2);
    const MultiVector e = random_multivector(rng, c, r, 2);
    sub(check, "Jacobi trial " + std::to_string(trial), [&] {
      const MultiVector total = schouten(a, schouten(b, e)) * Polynomial(sign_pow((p - 1) * (r - 1))) +
                                schouten(b, schouten(e, a)) * Polynomial(sign_pow((q - 1) * (p - 1))) +
                                schouten(e, schouten(a, b)) * Polynomial(sign_pow((r - 1) * (q - 1)));
      check.absorb(total.residuals("graded Jacobi trial " + std::to_string(trial)));
    });
  }
  return check;
}

Check hierarchy_theorem() {
  Check check;
  for (const auto& p : pn_corpus())
    sub(check, p.name, [&] {
      const Hierarchy h = hierarchy(p.pi, p.n, 3);
      expect(check, h.certificates.size() == 10, p.name + " certificates", std::to_string(h.certificates.size()));
      for (const auto& cert : h.certificates)
        check.absorb(cert.bracket.residuals(p.name + " [pi_" + std::to_string(cert.k) + ",pi_" + std::to_string(cert.l) + "]"));
    });
  sub(check, "diag(1,2)", [&] {
    const PNVerdict v = is_pn_pair(d12(), diagonal(r2(), {"1", "2"}));
    expect(check, !v.sharp_compat.ok && !v.sharp_compat.residuals.empty(), "diag(1,2) sharp-compatibility");
    expect(check, v.poisson.ok && v.torsion.ok, "diag(1,2) fails elsewhere");
  });
  return check;
}

Check compat_equivalence() {
  Check check;
  struct Case {
    std::string name;
    std::function<std::pair<AlgebroidData, AlgebroidData>()> build;
    int expected;  // 1 compatible, 0 incompatible, -1 agreement only
  };
  const auto cot = [](const MultiVector& pi) { return cotangent_algebroid(pi); };
  std::vector<Case> cases{
      {"(so3, abelian)", [] { return std::pair{so3_algebra(), AlgebroidData(point(), 3)}; }, 1},
      {"(TM, (TM)_(1+x1)Id)", [] { return std::pair{AlgebroidData::tangent(r2()), tangent_deformed_algebroid(conformal(r2(), "1 + x1"))}; }, 1},
      {"(TM, (TM)_diag(x1,x2^2,2))",
       [] { return std::pair{AlgebroidData::tangent(r3()), tangent_deformed_algebroid(diagonal(r3(), {"x1", "x2^2", "2"}))}; }, 1},
      {"(T*M_pi0, T*M_pi2)", [&] {
         const Hierarchy h = hierarchy(d12(), conformal(r2(), "1 + x1"), 2);
         return std::pair{cot(h.bivectors[0]), cot(h.bivectors[2])};
       }, 1},
      {"(T*M_pi1, T*M_pi2)", [&] {
         const Hierarchy h = hierarchy(d12(), conformal(r2(), "1 + x1"), 2);
         return std::pair{cot(h.bivectors[1]), cot(h.bivectors[2])};
       }, 1},
      {"(T*M_so3, T*M_2so3)", [&] { return std::pair{cot(so3()), cot(so3() * Polynomial(2))}; }, 1},
      {"(T*M_so3, T*M_so3*C)", [&] { return std::pair{cot(so3()), cot(so3() * r3().parse("x1^2 + x2^2 + x3^2"))}; }, 1},
      {"(T*M_d2^d3, T*M_x2 d1^d2)",
       [&] { return std::pair{cot(MultiVector::basis(r3(), {1, 2})), cot(MultiVector::basis(r3(), {0, 1}, r3().parse("x2")))}; }, 0},
      {"(so3, affine)", [] {
         AlgebroidData affine(point(), 3);
         affine.set_bracket(0, 1, {Polynomial(0), Polynomial(1), Polynomial(0)});
         return std::pair{so3_algebra(), affine};
       }, -1},
      {"(TM, T*M_d1^d2)", [&] { return std::pair{AlgebroidData::tangent(r2()), cot(d12())}; }, -1},
      {"(T*M_so3, T*M_d1^d2)", [&] { return std::pair{cot(so3()), cot(d12(r3()))}; }, -1},
      {"(TM, (TM)_diag(x1^2+1,x2))",
       [] { return std::pair{AlgebroidData::tangent(r2()), tangent_deformed_algebroid(diagonal(r2(), {"x1^2 + 1", "x2"}))}; }, 1},
  };
  int compatible = 0;
  int incompatible = 0;
  for (const auto& c : cases)
    sub(check, c.name, [&] {
      const auto [a, b] = c.build();
      const CompatReport r = compat_check(a, b);
      expect(check, r.agree(), c.name + " certificates disagree");
      (r.compatible() ? compatible : incompatible) += 1;
      if (c.expected >= 0) expect(check, r.compatible() == (c.expected == 1), c.name + " compatible", r.compatible() ? "true" : "false");
    });
  expect(check, compatible > 0 && incompatible > 0, "both verdicts represented");
  return check;
}

Check bialgebroids() {
  Check check;
  sub(check, "(TM, T*M_so3)", [&] {
    check.absorb(bialgebroid_check(AlgebroidData::tangent(r3()), cotangent_algebroid(so3())).residuals);
  });
  sub(check, "(TM, T*M_d1^d2)", [&] {
    check.absorb(bialgebroid_check(AlgebroidData::tangent(r2()), cotangent_algebroid(d12())).residuals);
  });
  for (const auto& p : pn_corpus())
    sub(check, p.name, [&] {
      check.absorb(bialgebroid_check(tangent_deformed_algebroid(p.n), cotangent_algebroid(p.pi)).residuals);
    });
  sub(check, "corrupted", [&] {
    AlgebroidData broken = cotangent_algebroid(so3());
    broken.set_bracket(0, 1, {Polynomial(0), Polynomial(0), Polynomial(2)});
    const Check c = bialgebroid_check(AlgebroidData::tangent(r3()), broken);
    expect(check, !c.ok && !c.residuals.empty(), "corrupted structure table passes");
  });
  return check;
}

Check jacobi_equivalence() {
  Check check;
  std::mt19937 rng(515);
  for (int trial = 0; trial < 24; ++trial) {
    const Chart& c = trial % 2 ? r3() : xyz();
    const MultiVector pi = random_multivector(rng, c, 2, 2);
    const MultiVector e = trial % 4 == 0 ? MultiVector(c, 1) : random_multivector(rng, c, 1, 2);
    sub(check, "random pair " + std::to_string(trial), [&] {
      const JacobiVerdict v = is_jacobi({pi, e});
      expect(check, v.schouten.ok == v.twisted.ok, "random pair " + std::to_string(trial) + " disagrees");
    });
  }
  const std::vector<std::pair<std::string, JacobiPair>> corpus{
      {"contact", contact()},
      {"so3", {so3(), MultiVector(r3(), 1)}},
      {"(0, x2 d1)", {MultiVector(r3(), 2), dd(r3(), 0, "x2")}},
      {"(0, (x1^2+x3) d2)", {MultiVector(r3(), 2), dd(r3(), 1, "x1^2 + x3")}},
  };
  for (const auto& [name, j] : corpus)
    sub(check, name, [&] {
      const JacobiVerdict v = is_jacobi(j);
      expect(check, v.ok(), name + " is Jacobi");
      const AlgebroidData jet = first_jet_algebroid(j);
      check.absorb(algebroid_validate(jet).residuals);
      const Chart& c = j.chart();
      const AlgebroidSection s = to_section({j.pi, j.e});
      const AlgebroidSection x0 = jet_cocycle(j);
      std::vector<AlgebroidSection> sections{AntiTensor::scalar(c.ring(), c.dim() + 1, c.parse(c.coord(0) + " * " + c.coord(1)))};
      for (std::size_t i = 0; i <= c.dim(); ++i)
        sections.push_back(AntiTensor::basis(c.ring(), c.dim() + 1, {static_cast<int>(i)}, c.coordinate(i % c.dim()) + Polynomial(1)));
      for (std::size_t k = 0; k < sections.size(); ++k) {
        const AlgebroidSection lhs = algebroid_differential(jet, sections[k]) + wedge(x0, sections[k]);
        check.absorb(residuals_of(name + " d + X0 vs twisted bracket, section " + std::to_string(k + 1),
                                  lhs - twisted_bracket(c, s, sections[k])));
      }
    });
  return check;
}

Check groupoid_round_trip() {
  Check check;
  for (const auto& p : pn_corpus()) {
    sub(check, p.name, [&] {
      const PairGroupoid g(p.pi.chart());
      const MultiVector pg = block_bivector(g, p.pi, -p.pi);
      const TensorOneOne ng = block_tensor(g, p.n, p.n);
      check.absorb(pn_groupoid_check(g, pg, ng).combined().residuals);
      const BaseStructure b = base_structure(g, pg, ng);
      expect(check, b.pi == p.pi, p.name + " recovers pi");
      expect(check, b.n == p.n, p.name + " recovers N");
      expect(check, b.ok(), p.name + " base verdict");
      const CoisotropicInvariance units = coisotropic_invariant_check(pg, ng, unit_space(g));
      expect(check, units.ok() && units.hierarchy.ok, p.name + " unit space");
      check.absorb(inversion_check(g, pg, ng).residuals);
    });
  }
  const PairGroupoid g(r2());
  sub(check, "cross-block", [&] {
    PolyMatrix m = TensorOneOne::identity(g.total()).matrix();
    m(0, 2) = Polynomial(1);
    const Check c = multiplicativity_check_tensor(g, TensorOneOne(g.total(), m));
    expect(check, !c.ok && !c.residuals.empty() && !c.residuals[0].name.empty(), "cross-block tensor passes");
  });
  sub(check, "wrong sign", [&] {
    const Check c = poisson_groupoid_check(g, block_bivector(g, d12(), d12()));
    expect(check, !c.ok && !c.residuals.empty() && !c.residuals[0].name.empty(), "pi + pi passes");
  });
  return check;
}

Check pn_bialgebroids() {
  Check check;
  for (const auto& p : pn_corpus()) {
    sub(check, p.name, [&] {
      const PNBialgebroidVerdict v = pn_bialgebroid_check(p.pi, p.n);
      for (auto& r : v.combined().residuals) check.fail(p.name + " " + r.name, r.value);
      expect(check, v.lifted.ok(), p.name + " lifted pair");
      expect(check, v.hierarchy.ok, p.name + " dual hierarchy");
    });
  }
  return check;
}

Check dn_coherence() {
  Check check;
  std::mt19937 rng(88);
  const auto corpus = nijenhuis_corpus();
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const TensorOneOne& n = corpus[k];
    const std::string name = "N" + std::to_string(k + 1);
    sub(check, name, [&] {
      check.absorb(is_nijenhuis(n).residuals);
      const AlgebroidData deformed = tangent_deformed_algebroid(n);
      const Chart& c = n.chart();
      for (int degree = 0; degree <= 2; ++degree)
        for (int trial = 0; trial < 2; ++trial) {
          const DiffForm w(c, random_tensor(rng, c.ring(), c.dim(), degree, 2));
          const std::string tag = name + " degree " + std::to_string(degree);
          check.absorb(residuals_of(tag + " d_N - d_(TM)_N", d_n(n, w).tensor() - algebroid_differential(deformed, w.tensor())));
          check.absorb((d_n(n, exterior_d(w)) + exterior_d(d_n(n, w))).residuals(tag + " d_N d + d d_N"));
        }
    });
  }
  return check;
}

struct Criterion {
  const char* title;
  Check (*run)();
};

constexpr std::array<Criterion, 8> kCriteria{{
    {"Schouten oracle agreement", schouten_oracle},
    {"PN hierarchy theorem", hierarchy_theorem},
    {"algebroid compatibility certificates agree", compat_equivalence},
    {"Lie bialgebroid checks", bialgebroids},
    {"Jacobi characterizations and 1-jet algebroid", jacobi_equivalence},
    {"pair-groupoid round trip", groupoid_round_trip},
    {"tangent-lift PN bialgebroid", pn_bialgebroids},
    {"d_N coherence", dn_coherence},
}};

std::string criterion_name(std::size_t i, const char* title) {
  return "criterion " + std::to_string(i) + ": " + title;
}

}  // namespace

std::vector<Report> run_suite() {
  std::vector<std::future<Report>> jobs;
  for (std::size_t i = 0; i < kCriteria.size(); ++i)
    jobs.push_back(std::async(std::launch::async, [i] {
      const Criterion& c = kCriteria[i];
      const std::string name = criterion_name(i + 1, c.title);
      return guarded(name, [&] {
        Check check;
        sub(check, "corpus", [&] { check = c.run(); });
        return check_report(name, check);
      });
    }));
  std::vector<Report> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

Report mutation_report(const std::vector<std::string>& runners) {
  const std::string name = criterion_name(9, "mutation sensitivity");
  return guarded(name, [&] {
    Check check;
    expect(check, runners.size() >= 3, "mutants", std::to_string(runners.size()));
    for (const auto& path : runners) {
      std::FILE* pipe = ::popen(("\"" + path + "\" 2>&1").c_str(), "r");
      if (!pipe) {
        check.fail(path, "cannot start");
        continue;
      }
      std::string output;
      std::array<char, 4096> buf{};
      for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) output.append(buf.data(), n);
      const int status = ::pclose(pipe);
      const bool exited = WIFEXITED(status);
      const int code = exited ? WEXITSTATUS(status) : -1;
      const bool killed = exited && code == 1 && (output.find(": fail") != std::string::npos || output.find(": error") != std::string::npos);
      const std::string mutant = path.substr(path.find_last_of('/') + 1);
      if (!killed) check.fail(mutant + " survived", "exit " + std::to_string(code));
    }
    return check_report(name, check);
  });
}

}  // namespace pncalc
