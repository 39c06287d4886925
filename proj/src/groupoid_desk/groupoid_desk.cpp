#include "pncalc/groupoid_desk.hpp"

#include <array>
#include <future>
#include <optional>

namespace pncalc {

namespace {

std::vector<std::string> suffixed(const std::vector<std::string>& names, const std::vector<std::string>& suffixes) {
  std::vector<std::string> out;
  for (const auto& s : suffixes)
    for (const auto& n : names) out.push_back(n + s);
  return out;
}

/// f over `from`, with variable i sent to coordinate offset + i of `to`.
Polynomial shifted(const Polynomial& f, const Chart& from, const Chart& to, std::size_t offset) {
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < from.dim(); ++i) images.push_back(to.coordinate(offset + i));
  return f.promoted(from.ring()).substitute(images, to.ring());
}

/// f over the total chart, re-expressed on the base via x_s -> x, x_t -> x.
Polynomial on_diagonal(const PairGroupoid& g, const Polynomial& f) {
  std::vector<Polynomial> images;
  for (int block = 0; block < 2; ++block)
    for (std::size_t i = 0; i < g.n(); ++i) images.push_back(g.base().coordinate(i));
  return f.promoted(g.total().ring()).substitute(images, g.base().ring());
}

bool depends_on_target(const PairGroupoid& g, const Polynomial& f) {
  for (std::size_t i = g.n(); i < 2 * g.n(); ++i)
    if (f.degree_in(i) > 0) return true;
  return false;
}

std::string tag(const char* name, std::size_t i) { return name + std::to_string(i + 1); }

/// eta'_j M(j, i) eta_i restricted to S, for rational covectors.
Polynomial pairing(const PolyMatrix& m, const std::vector<Rational>& left, const std::vector<Rational>& right) {
  Polynomial out(m.ring());
  for (std::size_t j = 0; j < m.rows(); ++j) {
    if (left[j].is_zero()) continue;
    for (std::size_t i = 0; i < m.cols(); ++i) {
      if (right[i].is_zero() || m(j, i).is_zero()) continue;
      out += m(j, i) * (left[j] * right[i]);
    }
  }
  return out;
}

/// Conormal pairs eta_b(M eta_a), a < b, restricted to S.
Check conormal_pairing(const PolyMatrix& m, const AffineSubmanifold& s, const std::string& op) {
  Check out;
  const auto conormal = s.conormal_basis();
  for (std::size_t a = 0; a < conormal.size(); ++a)
    for (std::size_t b = a + 1; b < conormal.size(); ++b) {
      const Polynomial value = s.restrict(pairing(m, conormal[b], conormal[a]));
      if (!value.is_zero()) out.fail(tag("eta", b) + "(" + op + " " + tag("eta", a) + ")", value.to_string());
    }
  return out;
}

void require_ambient(const Chart& c, const AffineSubmanifold& s, const char* context) {
  require_same_chart(c, s.ambient(), context);
}

void require_total(const PairGroupoid& g, const Chart& c, const char* context) {
  require_same_chart(c, g.total(), context);
}

/// Three copies of a total-chart tensor, with signs per copy.
PolyMatrix triple_matrix(const PairGroupoid& g, const PolyMatrix& m, const std::array<long, 3>& signs) {
  const std::size_t w = 2 * g.n();
  PolyMatrix out(g.triple().ring(), 3 * w, 3 * w);
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < w; ++i)
      for (std::size_t j = 0; j < w; ++j)
        if (!m(i, j).is_zero())
          out(c * w + i, c * w + j) = shifted(m(i, j), g.total(), g.triple(), c * w) * Rational(signs[c]);
  return out;
}

/// Source block of a total-chart sharp matrix, checked for independence of
/// the target coordinates and re-expressed on the base.
std::optional<PolyMatrix> source_block(const PairGroupoid& g, const PolyMatrix& m, const std::string& name,
                                       Check& defects) {
  PolyMatrix out(g.base().ring(), g.n(), g.n());
  bool ok = true;
  for (std::size_t i = 0; i < g.n(); ++i)
    for (std::size_t j = 0; j < g.n(); ++j) {
      if (depends_on_target(g, m(i, j))) {
        defects.fail(name + "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]", m(i, j).to_string());
        ok = false;
      }
      out(i, j) = on_diagonal(g, m(i, j));
    }
  if (!ok) return std::nullopt;
  return out;
}

void absorb_difference(Check& check, const PolyMatrix& a, const PolyMatrix& b, const std::string& name) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Polynomial d = a(i, j) - b(i, j);
      if (!d.is_zero())
        check.fail(name + "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]", d.to_string());
    }
}

}  // namespace

PairGroupoid::PairGroupoid(Chart base)
    : base_(std::move(base)),
      total_(suffixed(base_.coords(), {"_s", "_t"})),
      triple_(suffixed(total_.coords(), {"_1", "_2", "_3"})) {}

Polynomial PairGroupoid::on_block(const Polynomial& f, int block) const {
  return shifted(f, base_, total_, block == 0 ? 0 : n());
}

// --- affine submanifolds ------------------------------------------------------

AffineSubmanifold::AffineSubmanifold(Chart ambient, std::vector<AffineConstraint> constraints)
    : ambient_(std::move(ambient)), constraints_(std::move(constraints)) {
  const std::size_t n = ambient_.dim();
  std::vector<std::vector<Rational>> rows;
  for (const auto& c : constraints_) {
    if (c.coeffs.size() != n) throw InputError("affine constraint length does not match the chart");
    rows.push_back(c.coeffs);
    rows.back().push_back(c.rhs);
  }
  // Reduced row echelon form of [A | b].
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][col].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Rational inv = Rational(1) / rows[r][col];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t q = 0; q < rows.size(); ++q) {
      if (q == r || rows[q][col].is_zero()) continue;
      const Rational f = rows[q][col];
      for (std::size_t k = 0; k <= n; ++k) rows[q][k] -= f * rows[r][k];
    }
    pivots.push_back(col);
    ++r;
  }
  for (std::size_t q = r; q < rows.size(); ++q) {
    if (!rows[q][n].is_zero()) throw InputError("inconsistent affine constraints");
    throw InputError("affine constraints are not independent");
  }

  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    if (!is_pivot[i]) {
      free.push_back(i);
      names.push_back(ambient_.coord(i));
    }
  params_ = Chart(names);

  embedding_.assign(n, params_.zero());
  for (std::size_t k = 0; k < free.size(); ++k) embedding_[free[k]] = params_.coordinate(k);
  for (std::size_t q = 0; q < pivots.size(); ++q) {
    Polynomial x = params_.constant(rows[q][n]);
    for (std::size_t k = 0; k < free.size(); ++k)
      if (!rows[q][free[k]].is_zero()) x -= params_.coordinate(k) * rows[q][free[k]];
    embedding_[pivots[q]] = x;
  }
  for (std::size_t k = 0; k < free.size(); ++k) {
    std::vector<Rational> v(n, Rational(0));
    v[free[k]] = Rational(1);
    for (std::size_t q = 0; q < pivots.size(); ++q) v[pivots[q]] = -rows[q][free[k]];
    tangent_.push_back(std::move(v));
  }
}

std::vector<std::vector<Rational>> AffineSubmanifold::conormal_basis() const {
  std::vector<std::vector<Rational>> out;
  for (const auto& c : constraints_) out.push_back(c.coeffs);
  return out;
}

Polynomial AffineSubmanifold::restrict(const Polynomial& f) const {
  return f.promoted(ambient_.ring()).substitute(embedding_, params_.ring());
}

Check invariant_check(const TensorOneOne& n, const AffineSubmanifold& s) {
  require_ambient(n.chart(), s, "invariance check");
  Check out;
  const auto conormal = s.conormal_basis();
  const auto& tangent = s.tangent_basis();
  for (std::size_t a = 0; a < tangent.size(); ++a)
    for (std::size_t b = 0; b < conormal.size(); ++b) {
      const Polynomial value = s.restrict(pairing(n.matrix(), conormal[b], tangent[a]));
      if (!value.is_zero()) out.fail(tag("eta", b) + "(N " + tag("v", a) + ")", value.to_string());
    }
  return out;
}

Check coisotropic_check(const MultiVector& pi, const AffineSubmanifold& s) {
  if (pi.degree() != 2) throw InputError("coisotropy needs a bivector");
  require_ambient(pi.chart(), s, "coisotropy check");
  return conormal_pairing(sharp_matrix(pi), s, "pi#");
}

CoisotropicInvariance coisotropic_invariant_check(const MultiVector& pi, const TensorOneOne& n,
                                                  const AffineSubmanifold& s) {
  CoisotropicInvariance out;
  out.coisotropic = coisotropic_check(pi, s);
  out.invariant = invariant_check(n, s);
  if (!out.ok()) return out;
  const PolyMatrix sharp = sharp_matrix(pi);
  for (unsigned k = 1; k <= 2; ++k) {
    const Check c = conormal_pairing(n.matrix().pow(k) * sharp, s, "N^" + std::to_string(k) + " pi#");
    out.hierarchy.absorb(c.residuals);
  }
  if (!out.hierarchy.ok) throw InternalInconsistency("coisotropic-invariant submanifold is not coisotropic for N^k pi");
  return out;
}

// --- pair groupoid ------------------------------------------------------------

MultiVector block_bivector(const PairGroupoid& g, const MultiVector& pi_s, const MultiVector& pi_t) {
  MultiVector out(g.total(), 2);
  int block = 0;
  for (const MultiVector* p : {&pi_s, &pi_t}) {
    if (p->degree() != 2) throw InputError("block bivector needs bivectors");
    require_same_chart(p->chart(), g.base(), "block bivector");
    const int off = block * static_cast<int>(g.n());
    for (const auto& [idx, coef] : p->tensor().components()) out.add({idx[0] + off, idx[1] + off}, g.on_block(coef, block));
    ++block;
  }
  return out;
}

TensorOneOne block_tensor(const PairGroupoid& g, const TensorOneOne& n_s, const TensorOneOne& n_t) {
  const std::size_t n = g.n();
  PolyMatrix m(g.total().ring(), 2 * n, 2 * n);
  int block = 0;
  for (const TensorOneOne* t : {&n_s, &n_t}) {
    require_same_chart(t->chart(), g.base(), "block tensor");
    const std::size_t off = block * n;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(off + i, off + j) = g.on_block((*t)(i, j), block);
    ++block;
  }
  return TensorOneOne(g.total(), m);
}

AffineSubmanifold multiplication_graph(const PairGroupoid& g) {
  const std::size_t n = g.n();
  std::vector<AffineConstraint> eqs;
  // blocks 0..5 = (x, y) (y', z) (x', z'): y' = y, x' = x, z' = z
  for (auto [a, b] : {std::pair{2, 1}, {4, 0}, {5, 3}})
    for (std::size_t i = 0; i < n; ++i) {
      AffineConstraint c{std::vector<Rational>(6 * n, Rational(0)), Rational(0)};
      c.coeffs[a * n + i] = Rational(1);
      c.coeffs[b * n + i] = Rational(-1);
      eqs.push_back(std::move(c));
    }
  return AffineSubmanifold(g.triple(), std::move(eqs));
}

AffineSubmanifold unit_space(const PairGroupoid& g) {
  const std::size_t n = g.n();
  std::vector<AffineConstraint> eqs;
  for (std::size_t i = 0; i < n; ++i) {
    AffineConstraint c{std::vector<Rational>(2 * n, Rational(0)), Rational(0)};
    c.coeffs[i] = Rational(1);
    c.coeffs[n + i] = Rational(-1);
    eqs.push_back(std::move(c));
  }
  return AffineSubmanifold(g.total(), std::move(eqs));
}

Check multiplicativity_check_tensor(const PairGroupoid& g, const TensorOneOne& ng) {
  require_total(g, ng.chart(), "multiplicativity check");
  const TensorOneOne product(g.triple(), triple_matrix(g, ng.matrix(), {1, 1, 1}));
  return invariant_check(product, multiplication_graph(g));
}

Check poisson_groupoid_check(const PairGroupoid& g, const MultiVector& pi_g) {
  require_total(g, pi_g.chart(), "Poisson groupoid check");
  const Check poisson = is_poisson(pi_g);
  if (!poisson.ok) throw PreconditionFailure("groupoid bivector is not Poisson", poisson.residuals);
  const PolyMatrix product = triple_matrix(g, sharp_matrix(pi_g), {1, 1, -1});
  return conormal_pairing(product, multiplication_graph(g), "pi#");
}

Check PNGroupoidVerdict::combined() const {
  Check out = pn.combined();
  for (const Check* c : {&poisson_groupoid, &multiplicative, &units.coisotropic, &units.invariant}) {
    if (!c->ok) out.ok = false;
    out.residuals.insert(out.residuals.end(), c->residuals.begin(), c->residuals.end());
  }
  return out;
}

PNGroupoidVerdict pn_groupoid_check(const PairGroupoid& g, const MultiVector& pi_g, const TensorOneOne& ng) {
  require_total(g, pi_g.chart(), "PN groupoid check");
  require_total(g, ng.chart(), "PN groupoid check");
  auto pn = std::async(std::launch::async, [&] { return is_pn_pair(pi_g, ng); });
  auto poisson = std::async(std::launch::async, [&] {
    Check c = is_poisson(pi_g);
    return c.ok ? poisson_groupoid_check(g, pi_g) : c;
  });
  auto mult = std::async(std::launch::async, [&] { return multiplicativity_check_tensor(g, ng); });
  auto units = std::async(std::launch::async, [&] { return coisotropic_invariant_check(pi_g, ng, unit_space(g)); });
  PNGroupoidVerdict out;
  out.pn = pn.get();
  out.poisson_groupoid = poisson.get();
  out.multiplicative = mult.get();
  out.units = units.get();
  return out;
}

BaseStructure base_structure(const PairGroupoid& g, const MultiVector& pi_g, const TensorOneOne& ng) {
  const PNGroupoidVerdict verdict = pn_groupoid_check(g, pi_g, ng);
  if (!verdict.ok()) throw PreconditionFailure("not a PN pair groupoid", verdict.combined().residuals);
  const std::size_t n = g.n();
  const PolyMatrix sharp_g = sharp_matrix(pi_g);

  Check ill_defined;
  const auto sharp_m = source_block(g, sharp_g, "pi_G", ill_defined);
  if (!sharp_m) throw PreconditionFailure("pushforward along s is ill-defined", ill_defined.residuals);

  BaseStructure out;
  out.pi = bivector_from_sharp(g.base(), *sharp_m);
  PolyMatrix nm(g.base().ring(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) nm(i, j) = on_diagonal(g, ng(i, j));
  out.n = TensorOneOne(g.base(), nm);
  out.pn = is_pn_pair(out.pi, out.n);

  // s_* NG = N_M s_*: the source rows of NG are [N_M(x) | 0].
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j) {
      const Polynomial expected = j < n ? g.on_block(nm(i, j), 0) : g.total().zero();
      const Polynomial d = ng(i, j) - expected;
      if (!d.is_zero())
        out.s_related.fail("s_*N - N_M s_*[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]", d.to_string());
    }

  for (unsigned k = 0; k <= 2; ++k) {
    Check check;
    const std::string name = "s_*(N^" + std::to_string(k) + " pi_G)";
    const auto pushed = source_block(g, ng.matrix().pow(k) * sharp_g, name, check);
    if (pushed) absorb_difference(check, *pushed, nm.pow(k) * *sharp_m, name + " - N_M^" + std::to_string(k) + " pi_M");
    if (k == 1) out.s_related.absorb(check.residuals);
    out.hierarchy.absorb(std::move(check.residuals));
  }
  return out;
}

Check inversion_check(const PairGroupoid& g, const MultiVector& pi_g, const TensorOneOne& ng) {
  require_total(g, pi_g.chart(), "inversion check");
  require_total(g, ng.chart(), "inversion check");
  const std::size_t n = g.n();
  const Chart& c = g.total();
  std::vector<Polynomial> swap;
  for (std::size_t i = 0; i < 2 * n; ++i) swap.push_back(c.coordinate((i + n) % (2 * n)));
  const auto sigma = [&](int i) { return static_cast<int>((i + n) % (2 * n)); };
  const auto moved = [&](const Polynomial& f) { return f.promoted(c.ring()).substitute(swap, c.ring()); };

  Check out;
  MultiVector pushed(c, pi_g.degree());
  for (const auto& [idx, coef] : pi_g.tensor().components()) {
    IndexTuple t;
    for (int i : idx) t.push_back(sigma(i));
    pushed.add(t, moved(coef));
  }
  out.absorb((pushed + pi_g).residuals("sigma_*pi_G + pi_G"));
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j) {
      const Polynomial d = ng(i, j) - moved(ng(sigma(i), sigma(j)));
      if (!d.is_zero())
        out.fail("sigma_*N - N sigma_*[" + std::to_string(sigma(i) + 1) + "," + std::to_string(j + 1) + "]", d.to_string());
    }
  return out;
}

}  // namespace pncalc
