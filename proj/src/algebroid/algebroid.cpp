#include "pncalc/algebroid.hpp"

#include <future>

#include "pncalc/detail/leibniz_bracket.hpp"

namespace pncalc {

namespace {

/// All strictly increasing k-tuples from {0..r-1}.
std::vector<IndexTuple> combinations(std::size_t r, std::size_t k) {
  std::vector<IndexTuple> out;
  if (k > r) return out;
  IndexTuple t(k);
  for (std::size_t i = 0; i < k; ++i) t[i] = static_cast<int>(i);
  for (;;) {
    out.push_back(t);
    std::size_t i = k;
    while (i > 0 && t[i - 1] == static_cast<int>(r - k + i - 1)) --i;
    if (i == 0) return out;
    ++t[i - 1];
    for (std::size_t j = i; j < k; ++j) t[j] = t[j - 1] + 1;
  }
}

detail::BracketRules algebroid_rules(const AlgebroidData& a) {
  return detail::BracketRules{
      [&a](int i, const Polynomial& f, int j, const Polynomial& g) {
        const auto ui = static_cast<std::size_t>(i);
        const auto uj = static_cast<std::size_t>(j);
        AntiTensor out = a.basis_bracket(ui, uj) * (f * g);
        out.add({j}, f * a.anchor_apply(ui, g));
        out.add({i}, -(g * a.anchor_apply(uj, f)));
        return out;
      },
      [&a](int i, const Polynomial& g) { return a.anchor_apply(static_cast<std::size_t>(i), g); }};
}

std::string tuple_name(const AlgebroidData& a, const IndexTuple& idx) {
  std::string s;
  for (int i : idx) s += (s.empty() ? "" : ",") + a.basis_names()[static_cast<std::size_t>(i)];
  return s;
}

/// rho(X) for a degree-1 section X.
MultiVector anchor_of(const AlgebroidData& a, const AlgebroidSection& x) {
  MultiVector out(a.base(), 1);
  for (const auto& [idx, coef] : x.components()) out += a.anchor_field(static_cast<std::size_t>(idx[0])) * coef;
  return out;
}

Polynomial to_base(const Polynomial& p, const Chart& total, const Chart& base) {
  std::vector<Polynomial> images;
  for (std::size_t v = 0; v < total.dim(); ++v)
    images.push_back(v < base.dim() ? base.coordinate(v) : base.zero());
  return p.substitute(images, base.ring());
}

}  // namespace

// --- AlgebroidData -------------------------------------------------------------

AlgebroidData::AlgebroidData(Chart base, std::size_t rank)
    : base_(std::move(base)),
      rank_(rank),
      anchor_(base_.ring(), base_.dim(), rank),
      c_(rank * rank * rank, base_.zero()) {
  for (std::size_t i = 1; i <= rank; ++i) names_.push_back("e" + std::to_string(i));
}

AlgebroidData AlgebroidData::tangent(const Chart& base) {
  AlgebroidData a(base, base.dim());
  std::vector<std::string> names;
  for (std::size_t i = 0; i < base.dim(); ++i) {
    a.set_anchor(i, i, base.constant(Rational(1)));
    names.push_back("d_" + base.coord(i));
  }
  a.set_basis_names(std::move(names));
  return a;
}

void AlgebroidData::set_basis_names(std::vector<std::string> names) {
  if (names.size() != rank_) throw InputError("basis name count does not match rank");
  names_ = std::move(names);
}

void AlgebroidData::set_anchor(std::size_t alpha, std::size_t i, const Polynomial& value) {
  if (alpha >= base_.dim() || i >= rank_) throw InputError("anchor index out of range");
  anchor_(alpha, i) = value.promoted(base_.ring());
}

void AlgebroidData::set_bracket(std::size_t i, std::size_t j, const std::vector<Polynomial>& coeffs) {
  if (i >= rank_ || j >= rank_ || coeffs.size() != rank_) throw InputError("bracket index out of range");
  if (i == j) {
    for (const auto& c : coeffs)
      if (!c.is_zero()) throw InputError("[e_i, e_i] must vanish");
    return;
  }
  for (std::size_t k = 0; k < rank_; ++k) {
    c_[(k * rank_ + i) * rank_ + j] = coeffs[k].promoted(base_.ring());
    c_[(k * rank_ + j) * rank_ + i] = -coeffs[k].promoted(base_.ring());
  }
}

AlgebroidSection AlgebroidData::basis_bracket(std::size_t i, std::size_t j) const {
  AlgebroidSection out = zero_section(1);
  for (std::size_t k = 0; k < rank_; ++k) out.add({static_cast<int>(k)}, structure(k, i, j));
  return out;
}

MultiVector AlgebroidData::anchor_field(std::size_t i) const {
  std::vector<Polynomial> col;
  for (std::size_t alpha = 0; alpha < base_.dim(); ++alpha) col.push_back(anchor_(alpha, i));
  return MultiVector::linear(base_, col);
}

Polynomial AlgebroidData::anchor_apply(std::size_t i, const Polynomial& f) const {
  const Polynomial g = f.promoted(base_.ring());
  Polynomial out = base_.zero();
  for (std::size_t alpha = 0; alpha < base_.dim(); ++alpha)
    if (!anchor_(alpha, i).is_zero()) out += anchor_(alpha, i) * g.partial(alpha);
  return out;
}

AlgebroidSection AlgebroidData::zero_section(int degree) const { return AntiTensor(base_.ring(), rank_, degree); }

AlgebroidSection AlgebroidData::section(IndexTuple idx, const Polynomial& coef) const {
  return AntiTensor::basis(base_.ring(), rank_, std::move(idx), coef.promoted(base_.ring()));
}

AlgebroidSection AlgebroidData::scalar(const Polynomial& f) const {
  return AntiTensor::scalar(base_.ring(), rank_, f.promoted(base_.ring()));
}

void require_same_shape(const AlgebroidData& a, const AlgebroidData& b, const char* context) {
  require_same_chart(a.base(), b.base(), context);
  if (a.rank() != b.rank()) throw InputError(std::string(context) + ": rank mismatch");
}

AlgebroidData combine(const AlgebroidData& a, const AlgebroidData& b, const Rational& lambda) {
  require_same_shape(a, b, "algebroid combination");
  AlgebroidData out(a);
  const Polynomial l = a.base_.constant(lambda);
  out.anchor_ += b.anchor_ * l;
  for (std::size_t m = 0; m < out.c_.size(); ++m) out.c_[m] += b.c_[m] * l;
  return out;
}

// Basis names are labels only and do not take part in equality.
bool operator==(const AlgebroidData& a, const AlgebroidData& b) {
  return a.base_ == b.base_ && a.rank_ == b.rank_ && a.anchor_ == b.anchor_ && a.c_ == b.c_;
}

// --- brackets and differentials ----------------------------------------------------

AlgebroidSection gerstenhaber_bracket(const AlgebroidData& a, const AlgebroidSection& p, const AlgebroidSection& q) {
  if (p.dim() != a.rank() || q.dim() != a.rank()) throw InputError("section does not belong to this algebroid");
  const AlgebroidSection pp = p.map_coefficients([&](const Polynomial& c) { return c.promoted(a.base().ring()); });
  const AlgebroidSection qq = q.map_coefficients([&](const Polynomial& c) { return c.promoted(a.base().ring()); });
  return detail::leibniz_bracket(pp, qq, algebroid_rules(a));
}

AlgebroidSection section_bracket(const AlgebroidData& a, const AlgebroidSection& x, const AlgebroidSection& y) {
  if (x.degree() != 1 || y.degree() != 1) throw InputError("section bracket needs degree-1 sections");
  return gerstenhaber_bracket(a, x, y);
}

AlgebroidSection algebroid_differential(const AlgebroidData& a, const AlgebroidSection& omega) {
  if (omega.dim() != a.rank()) throw InputError("dual section does not belong to this algebroid");
  const std::size_t k = static_cast<std::size_t>(omega.degree());
  AlgebroidSection out = a.zero_section(omega.degree() + 1);
  for (const IndexTuple& idx : combinations(a.rank(), k + 1)) {
    Polynomial value = a.base().zero();
    for (std::size_t p = 0; p <= k; ++p) {
      IndexTuple rest = idx;
      rest.erase(rest.begin() + static_cast<long>(p));
      const Polynomial term = a.anchor_apply(static_cast<std::size_t>(idx[p]), omega.at(rest));
      value += p % 2 == 0 ? term : -term;
    }
    for (std::size_t p = 0; p <= k; ++p)
      for (std::size_t q = p + 1; q <= k; ++q) {
        IndexTuple rest = idx;
        rest.erase(rest.begin() + static_cast<long>(q));
        rest.erase(rest.begin() + static_cast<long>(p));
        for (std::size_t m = 0; m < a.rank(); ++m) {
          const Polynomial& c = a.structure(m, static_cast<std::size_t>(idx[p]), static_cast<std::size_t>(idx[q]));
          if (c.is_zero()) continue;
          IndexTuple args{static_cast<int>(m)};
          args.insert(args.end(), rest.begin(), rest.end());
          const Polynomial term = c * omega.at(args);
          value += (p + q) % 2 == 0 ? term : -term;
        }
      }
    out.add(idx, value);
  }
  return out;
}

Check algebroid_validate(const AlgebroidData& a) {
  Check check;
  for (const IndexTuple& t : combinations(a.rank(), 3)) {
    const auto e = [&](int i) { return a.section({i}); };
    const AlgebroidSection jac = section_bracket(a, a.basis_bracket(t[0], t[1]), e(t[2])) +
                                 section_bracket(a, a.basis_bracket(t[1], t[2]), e(t[0])) +
                                 section_bracket(a, a.basis_bracket(t[2], t[0]), e(t[1]));
    check.absorb(residuals_of("Jacobi(" + tuple_name(a, t) + ")", jac));
  }
  for (const IndexTuple& t : combinations(a.rank(), 2)) {
    const auto i = static_cast<std::size_t>(t[0]);
    const auto j = static_cast<std::size_t>(t[1]);
    const MultiVector defect =
        anchor_of(a, a.basis_bracket(i, j)) - lie_bracket(a.anchor_field(i), a.anchor_field(j));
    check.absorb(defect.residuals("rho[" + tuple_name(a, t) + "]-[rho,rho]"));
  }
  return check;
}

// --- dual linear Poisson structures ------------------------------------------------

Chart dual_chart(const AlgebroidData& a, const std::string& prefix) {
  std::vector<std::string> names = a.base().coords();
  const auto fibre = fresh_names(prefix, a.rank(), names);
  names.insert(names.end(), fibre.begin(), fibre.end());
  return Chart(std::move(names));
}

MultiVector dual_linear_poisson(const AlgebroidData& a, const std::string& prefix) {
  const Check valid = algebroid_validate(a);
  if (!valid.ok) throw PreconditionFailure("not a Lie algebroid", valid.residuals);
  const Chart total = dual_chart(a, prefix);
  const std::size_t n = a.base().dim();
  MultiVector pi(total, 2);
  for (std::size_t alpha = 0; alpha < n; ++alpha)
    for (std::size_t i = 0; i < a.rank(); ++i)
      // pi(dx^a, dxi_i) = {x^a, xi_i} = -a^a_i
      pi.add({static_cast<int>(alpha), static_cast<int>(n + i)}, -a.anchor(alpha, i).renamed_into(total.ring()));
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = i + 1; j < a.rank(); ++j) {
      Polynomial value = total.zero();
      for (std::size_t k = 0; k < a.rank(); ++k)
        value += a.structure(k, i, j).renamed_into(total.ring()) * total.coordinate(n + k);
      pi.add({static_cast<int>(n + i), static_cast<int>(n + j)}, value);
    }
  return pi;
}

AlgebroidData algebroid_from_linear_poisson(const Chart& base, const MultiVector& pi) {
  if (pi.degree() != 2) throw InputError("expected a bivector on the dual bundle");
  const Chart& total = pi.chart();
  const std::size_t n = base.dim();
  if (total.dim() < n) throw InputError("dual chart is smaller than the base");
  for (std::size_t v = 0; v < n; ++v)
    if (total.coord(v) != base.coord(v)) throw InputError("dual chart does not start with the base coordinates");
  const std::size_t r = total.dim() - n;

  std::vector<Residual> bad;
  const auto fibre_free = [&](const Polynomial& p) {
    for (std::size_t k = n; k < total.dim(); ++k)
      if (p.degree_in(k) != 0) return false;
    return true;
  };
  AlgebroidData a(base, r);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < r; ++i) names.push_back(total.coord(n + i));
  a.set_basis_names(std::move(names));

  for (std::size_t alpha = 0; alpha < n; ++alpha)
    for (std::size_t beta = alpha + 1; beta < n; ++beta) {
      const Polynomial v = pi.at({static_cast<int>(alpha), static_cast<int>(beta)});
      if (!v.is_zero()) bad.push_back({"pi[" + index_key({static_cast<int>(alpha), static_cast<int>(beta)}) + "]", v.to_string()});
    }
  for (std::size_t alpha = 0; alpha < n; ++alpha)
    for (std::size_t i = 0; i < r; ++i) {
      const Polynomial v = pi.at({static_cast<int>(alpha), static_cast<int>(n + i)});
      if (!fibre_free(v)) {
        bad.push_back({"pi[" + index_key({static_cast<int>(alpha), static_cast<int>(n + i)}) + "]", v.to_string()});
        continue;
      }
      a.set_anchor(alpha, i, -to_base(v, total, base));
    }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      const Polynomial v = pi.at({static_cast<int>(n + i), static_cast<int>(n + j)});
      std::vector<Polynomial> coeffs;
      Polynomial rebuilt = total.zero();
      bool linear = true;
      for (std::size_t k = 0; k < r; ++k) {
        const Polynomial c = v.partial(n + k);
        linear = linear && fibre_free(c);
        rebuilt += c * total.coordinate(n + k);
        coeffs.push_back(to_base(c, total, base));
      }
      if (!linear || !(rebuilt == v)) {
        bad.push_back({"pi[" + index_key({static_cast<int>(n + i), static_cast<int>(n + j)}) + "]", v.to_string()});
        continue;
      }
      a.set_bracket(i, j, coeffs);
    }
  if (!bad.empty()) throw PreconditionFailure("bivector is not fibre-linear", bad);
  return a;
}

// --- the two standard algebroids of a PN pair -----------------------------------------

AlgebroidData cotangent_algebroid(const MultiVector& pi) {
  const Check poisson = is_poisson(pi);
  if (!poisson.ok) throw PreconditionFailure("cotangent algebroid needs a Poisson bivector", poisson.residuals);
  const Chart& c = pi.chart();
  AlgebroidData a(c, c.dim());
  std::vector<std::string> names;
  const PolyMatrix s = sharp_matrix(pi);
  for (std::size_t i = 0; i < c.dim(); ++i) {
    names.push_back("d" + c.coord(i));
    for (std::size_t alpha = 0; alpha < c.dim(); ++alpha) a.set_anchor(alpha, i, s(alpha, i));
  }
  a.set_basis_names(std::move(names));
  for (std::size_t i = 0; i < c.dim(); ++i)
    for (std::size_t j = i + 1; j < c.dim(); ++j)
      a.set_bracket(i, j,
                    koszul_bracket(pi, DiffForm::basis(c, {static_cast<int>(i)}), DiffForm::basis(c, {static_cast<int>(j)}))
                        .coefficients());
  return a;
}

AlgebroidData tangent_deformed_algebroid(const TensorOneOne& n) {
  const Check nij = is_nijenhuis(n);
  if (!nij.ok) throw PreconditionFailure("deformed algebroid needs a Nijenhuis tensor", nij.residuals);
  const Chart& c = n.chart();
  AlgebroidData a = AlgebroidData::tangent(c);
  for (std::size_t alpha = 0; alpha < c.dim(); ++alpha)
    for (std::size_t i = 0; i < c.dim(); ++i) a.set_anchor(alpha, i, n(alpha, i));
  for (std::size_t i = 0; i < c.dim(); ++i)
    for (std::size_t j = i + 1; j < c.dim(); ++j)
      a.set_bracket(i, j,
                    deformed_bracket(n, MultiVector::basis(c, {static_cast<int>(i)}), MultiVector::basis(c, {static_cast<int>(j)}))
                        .coefficients());
  return a;
}

// --- compatibility ---------------------------------------------------------------------

namespace {

Check jacobi_theta_certificate(const AlgebroidData& a1, const AlgebroidData& a2) {
  Check check;
  for (const IndexTuple& t : combinations(a1.rank(), 3)) {
    AlgebroidSection j = a1.zero_section(1);
    for (int rot = 0; rot < 3; ++rot) {
      const auto x = static_cast<std::size_t>(t[rot]);
      const auto y = static_cast<std::size_t>(t[(rot + 1) % 3]);
      const AlgebroidSection z = a1.section({t[(rot + 2) % 3]});
      j += section_bracket(a2, a1.basis_bracket(x, y), z) + section_bracket(a1, a2.basis_bracket(x, y), z);
    }
    check.absorb(residuals_of("J(" + tuple_name(a1, t) + ")", j));
  }
  for (const IndexTuple& t : combinations(a1.rank(), 2)) {
    const auto x = static_cast<std::size_t>(t[0]);
    const auto y = static_cast<std::size_t>(t[1]);
    const MultiVector theta = lie_bracket(a1.anchor_field(x), a2.anchor_field(y)) +
                              lie_bracket(a2.anchor_field(x), a1.anchor_field(y)) -
                              anchor_of(a1, a2.basis_bracket(x, y)) - anchor_of(a2, a1.basis_bracket(x, y));
    check.absorb(theta.residuals("Theta(" + tuple_name(a1, t) + ")"));
  }
  return check;
}

Check anticommutator_certificate(const AlgebroidData& a1, const AlgebroidData& a2) {
  Check check;
  const auto anti = [&](const AlgebroidSection& w) {
    return algebroid_differential(a1, algebroid_differential(a2, w)) +
           algebroid_differential(a2, algebroid_differential(a1, w));
  };
  const Chart& base = a1.base();
  for (std::size_t alpha = 0; alpha < base.dim(); ++alpha)
    check.absorb(residuals_of("[d1,d2](" + base.coord(alpha) + ")", anti(a1.scalar(base.coordinate(alpha)))));
  for (std::size_t k = 0; k < a1.rank(); ++k)
    check.absorb(residuals_of("[d1,d2](eps" + std::to_string(k + 1) + ")", anti(a1.section({static_cast<int>(k)}))));
  return check;
}

Check dual_poisson_certificate(const AlgebroidData& a1, const AlgebroidData& a2) {
  Check check;
  check.absorb(schouten(dual_linear_poisson(a1), dual_linear_poisson(a2)).residuals("[pi1,pi2]"));
  return check;
}

}  // namespace

CompatReport compat_check(const AlgebroidData& a1, const AlgebroidData& a2) {
  require_same_shape(a1, a2, "compatibility check");
  for (const AlgebroidData* a : {&a1, &a2}) {
    const Check valid = algebroid_validate(*a);
    if (!valid.ok) throw PreconditionFailure("compatibility check needs two Lie algebroids", valid.residuals);
  }
  auto jt = std::async(std::launch::async, jacobi_theta_certificate, std::cref(a1), std::cref(a2));
  auto ac = std::async(std::launch::async, anticommutator_certificate, std::cref(a1), std::cref(a2));
  auto dp = std::async(std::launch::async, dual_poisson_certificate, std::cref(a1), std::cref(a2));
  CompatReport report{jt.get(), ac.get(), dp.get()};
  if (!report.agree())
    throw InternalInconsistency("compatibility certificates disagree (J/Theta " +
                                std::string(report.jacobi_theta.ok ? "pass" : "fail") + ", [d1,d2] " +
                                (report.anticommutator.ok ? "pass" : "fail") + ", [pi1,pi2] " +
                                (report.dual_poisson.ok ? "pass" : "fail") + ")");
  return report;
}

// --- Lie bialgebroids ---------------------------------------------------------------------

Check bialgebroid_check(const AlgebroidData& a, const AlgebroidData& astar) {
  require_same_shape(a, astar, "bialgebroid check");
  const auto dstar = [&](const AlgebroidSection& s) { return algebroid_differential(astar, s); };
  const auto br = [&](const AlgebroidSection& p, const AlgebroidSection& q) { return gerstenhaber_bracket(a, p, q); };
  const auto defect = [&](const AlgebroidSection& x, const AlgebroidSection& y) {
    return dstar(br(x, y)) - br(dstar(x), y) - br(x, dstar(y));
  };
  const Chart& base = a.base();
  const auto& names = a.basis_names();
  Check check;
  for (const IndexTuple& t : combinations(a.rank(), 2))
    check.absorb(residuals_of("D(" + tuple_name(a, t) + ")", defect(a.section({t[0]}), a.section({t[1]}))));
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j)
      for (std::size_t alpha = 0; alpha < base.dim(); ++alpha) {
        const AlgebroidSection y = a.section({static_cast<int>(j)}, base.coordinate(alpha));
        check.absorb(residuals_of("D(" + names[i] + "," + base.coord(alpha) + "*" + names[j] + ")",
                                  defect(a.section({static_cast<int>(i)}), y)));
      }
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t alpha = 0; alpha < base.dim(); ++alpha) {
      const AlgebroidSection x = a.section({static_cast<int>(i)});
      const AlgebroidSection f = a.scalar(base.coordinate(alpha));
      check.absorb(residuals_of("D(" + names[i] + "," + base.coord(alpha) + ")",
                                dstar(br(x, f)) - br(dstar(x), f) - br(x, dstar(f))));
    }
  return check;
}

// --- tangent-lift model --------------------------------------------------------------------

TensorOneOne tangent_lift(const TensorOneOne& n, const Chart& total) {
  const Chart& base = n.chart();
  const std::size_t d = base.dim();
  if (total.dim() != 2 * d) throw InputError("tangent chart must have twice the base dimension");
  PolyMatrix m(total.ring(), 2 * d, 2 * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Polynomial e = n(i, j).renamed_into(total.ring());
      m(i, j) = e;
      m(d + i, d + j) = e;
      Polynomial lower = total.zero();
      for (std::size_t k = 0; k < d; ++k) lower += total.coordinate(d + k) * e.partial(k);
      m(d + i, j) = lower;
    }
  return TensorOneOne(total, m);
}

Check PNBialgebroidVerdict::combined() const {
  Check c;
  for (const Check& part : {bialgebroid, deformed, lifted.combined(), base_recovery, hierarchy}) {
    if (!part.ok) c.ok = false;
    c.residuals.insert(c.residuals.end(), part.residuals.begin(), part.residuals.end());
  }
  return c;
}

PNBialgebroidVerdict pn_bialgebroid_check(const MultiVector& pi, const TensorOneOne& n) {
  const PNVerdict base_verdict = is_pn_pair(pi, n);
  if (!base_verdict.ok()) throw PreconditionFailure("not a Poisson-Nijenhuis pair", base_verdict.combined().residuals);
  const Chart& base = pi.chart();
  const std::size_t d = base.dim();

  PNBialgebroidVerdict v;
  const AlgebroidData cotangent = cotangent_algebroid(pi);
  v.bialgebroid = bialgebroid_check(AlgebroidData::tangent(base), cotangent);
  v.deformed = bialgebroid_check(tangent_deformed_algebroid(n), cotangent);

  v.lifted_pi = dual_linear_poisson(cotangent, "v");
  const Chart& total = v.lifted_pi.chart();
  v.lifted_n = tangent_lift(n, total);
  v.lifted = is_pn_pair(v.lifted_pi, v.lifted_n);

  // Restriction to the zero section v = 0.
  std::vector<Polynomial> at_zero;
  for (std::size_t k = 0; k < total.dim(); ++k) at_zero.push_back(k < d ? total.coordinate(k) : total.zero());
  const auto restrict = [&](const Polynomial& p) { return p.substitute(at_zero, total.ring()); };
  const auto expect = [&](const std::string& name, const Polynomial& got, const Polynomial& want) {
    const Polynomial diff = restrict(got) - want.renamed_into(total.ring());
    if (!diff.is_zero()) v.base_recovery.fail(name, diff.to_string());
  };
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const int ia = static_cast<int>(a), ib = static_cast<int>(b), ja = static_cast<int>(d + a),
                jb = static_cast<int>(d + b);
      const std::string key = index_key({ia, ib});
      if (a < b) {
        expect("pi_A(x,x)[" + key + "]", v.lifted_pi.at({ia, ib}), base.zero());
        expect("pi_A(v,v)[" + key + "]", v.lifted_pi.at({ja, jb}), base.zero());
      }
      expect("pi_A(x,v)[" + key + "]-pi", v.lifted_pi.at({ia, jb}), pi.at({ia, ib}));
      expect("N_*(x,x)[" + key + "]-N", v.lifted_n(a, b), n(a, b));
      expect("N_*(v,v)[" + key + "]-N", v.lifted_n(d + a, d + b), n(a, b));
      expect("N_*(x,v)[" + key + "]", v.lifted_n(a, d + b), base.zero());
      expect("N_*(v,x)[" + key + "]", v.lifted_n(d + a, b), base.zero());
    }

  // The lifted hierarchy N_*^k pi_A, read back as algebroids on T^*M.
  if (v.lifted.ok()) {
    std::vector<AlgebroidData> levels;
    TensorOneOne power = TensorOneOne::identity(total);
    TensorOneOne base_power = TensorOneOne::identity(base);
    for (unsigned k = 0; k <= 2; ++k) {
      levels.push_back(algebroid_from_linear_poisson(base, compose(power, v.lifted_pi)));
      if (!(levels.back() == cotangent_algebroid(compose(base_power, pi))))
        v.hierarchy.fail("level " + std::to_string(k), "dual algebroid differs from (T*M)_{N^k pi}");
      power = power * v.lifted_n;
      base_power = base_power * n;
    }
    for (std::size_t k = 0; k < levels.size(); ++k)
      for (std::size_t l = k + 1; l < levels.size(); ++l) {
        const CompatReport r = compat_check(levels[k], levels[l]);
        if (!r.compatible()) {
          for (const auto& res : r.jacobi_theta.residuals)
            v.hierarchy.fail("(" + std::to_string(k) + "," + std::to_string(l) + ") " + res.name, res.value);
        }
      }
  } else {
    v.hierarchy.ok = false;
  }
  return v;
}

}  // namespace pncalc
