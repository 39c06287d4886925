#include "pncalc/jacobi.hpp"

#include "pncalc/detail/mutation.hpp"

namespace pncalc {

namespace {

std::vector<Polynomial> cocycle(const Chart& chart) {
  std::vector<Polynomial> phi(chart.dim() + 1, chart.zero());
  phi.back() = chart.constant(Rational(1));
  return phi;
}

/// Cartan calculus of TM x R twisted by phi, acting on sections of the
/// exterior algebra of its dual. With (P, Q) <-> P + e ^ Q the twist enters
/// as d^phi = d - phi ^ ; the opposite sign yields a bracket that fails the
/// Jacobi identity on contact structures.
class TwistedCalculus {
 public:
  explicit TwistedCalculus(const Chart& chart)
      : algebroid_(extended_tangent(chart)), phi_(cocycle(chart)), phi_section_(AntiTensor::linear(chart.ring(), phi_)) {}

  AlgebroidSection d(const AlgebroidSection& w) const {
    return algebroid_differential(algebroid_, w) - wedge(phi_section_, w);
  }
  AlgebroidSection lie(const AlgebroidSection& x, const AlgebroidSection& w) const {
    const auto xs = x.as_linear();
    AlgebroidSection out = contract(xs, d(w));
    if (w.degree() > 0) out += d(contract(xs, w));
    return out;
  }

 private:
  AlgebroidData algebroid_;
  std::vector<Polynomial> phi_;
  AlgebroidSection phi_section_;
};

std::vector<Residual> tagged(const std::string& name, const ExtendedSection& s) {
  auto out = s.p.residuals(name + ".P");
  auto q = s.q.residuals(name + ".Q");
  out.insert(out.end(), q.begin(), q.end());
  return out;
}

}  // namespace

void JacobiPair::validate() const {
  if (pi.degree() != 2) throw InputError("Jacobi pair: pi must be a bivector");
  if (e.degree() != 1) throw InputError("Jacobi pair: E must be a vector field");
  require_same_chart(pi.chart(), e.chart(), "Jacobi pair");
}

AlgebroidData extended_tangent(const Chart& chart) {
  AlgebroidData a(chart, chart.dim() + 1);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < chart.dim(); ++i) {
    a.set_anchor(i, i, chart.constant(Rational(1)));
    names.push_back("d_" + chart.coord(i));
  }
  names.push_back("e");
  a.set_basis_names(std::move(names));
  return a;
}

AlgebroidSection to_section(const ExtendedSection& s) {
  const Chart& c = s.p.chart();
  const int e = static_cast<int>(c.dim());
  AlgebroidSection out(c.ring(), c.dim() + 1, s.degree());
  for (const auto& [idx, coef] : s.p.tensor().components()) out.add(idx, coef);
  if (s.degree() > 0) {
    require_same_chart(c, s.q.chart(), "extended section");
    if (s.q.degree() != s.degree() - 1) throw InputError("extended section (P, Q) needs deg Q = deg P - 1");
    for (const auto& [idx, coef] : s.q.tensor().components()) {
      IndexTuple t{e};
      t.insert(t.end(), idx.begin(), idx.end());
      out.add(std::move(t), coef);
    }
  }
  return out;
}

ExtendedSection from_section(const Chart& chart, const AlgebroidSection& s) {
  if (s.dim() != chart.dim() + 1) throw InputError("section does not live on TM x R");
  const int k = s.degree();
  const int e = static_cast<int>(chart.dim());
  ExtendedSection out{MultiVector(chart, k), MultiVector(chart, k > 0 ? k - 1 : 0)};
  for (const auto& [idx, coef] : s.components()) {
    if (!idx.empty() && idx.back() == e) {
      // b_J ^ e = (-1)^{|J|} e ^ b_J
      const IndexTuple j(idx.begin(), idx.end() - 1);
      out.q.add(j, j.size() % 2 == 0 ? coef : -coef);
    } else {
      out.p.add(idx, coef);
    }
  }
  return out;
}

AlgebroidSection twisted_bracket(const Chart& chart, const AlgebroidSection& p, const AlgebroidSection& q) {
  const AlgebroidData a = extended_tangent(chart);
  const std::vector<Polynomial> phi = cocycle(chart);
  const int dp = p.degree();
  const int dq = q.degree();
  AlgebroidSection out = gerstenhaber_bracket(a, p, q);
  if (dq > 0 && dp != 1) {
    const AlgebroidSection t = wedge(p, contract(phi, q)) * chart.constant(Rational((dp % 2 == 0 ? -1 : 1) * (dp - 1)));
    out += t;
  }
  if (dp > 0 && dq != 1) {
    const long sign = detail::mutated_sign(3);
    out -= wedge(contract(phi, p), q) * chart.constant(Rational(sign * (dq - 1)));
  }
  return out;
}

ExtendedSection twisted_gerstenhaber(const ExtendedSection& p, const ExtendedSection& q) {
  require_same_chart(p.p.chart(), q.p.chart(), "twisted bracket");
  const Chart& c = p.p.chart();
  return from_section(c, twisted_bracket(c, to_section(p), to_section(q)));
}

JacobiVerdict is_jacobi(const JacobiPair& j) {
  j.validate();
  JacobiVerdict v;
  v.schouten.absorb((schouten(j.pi, j.pi) - wedge(j.e, j.pi) * Polynomial(2)).residuals("[pi,pi]-2E^pi"));
  v.schouten.absorb(schouten(j.e, j.pi).residuals("[E,pi]"));
  const ExtendedSection s{j.pi, j.e};
  v.twisted.absorb(tagged("[(pi,E),(pi,E)]", twisted_gerstenhaber(s, s)));
  if (v.schouten.ok != v.twisted.ok)
    throw InternalInconsistency("the two Jacobi characterizations disagree");
  return v;
}

AlgebroidData first_jet_algebroid(const JacobiPair& j) {
  const JacobiVerdict v = is_jacobi(j);
  if (!v.ok()) throw PreconditionFailure("not a Jacobi structure", v.schouten.residuals);
  const Chart& c = j.chart();
  const std::size_t n = c.dim();
  const TwistedCalculus calc(c);
  const AlgebroidSection s = to_section({j.pi, j.e});
  const auto eps = [&](std::size_t i) { return AlgebroidSection::basis(c.ring(), n + 1, {static_cast<int>(i)}, c.constant(Rational(1))); };
  const auto sharp_s = [&](std::size_t i) { return contract(eps(i).as_linear(), s); };

  AlgebroidData jet(c, n + 1);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("d" + c.coord(i));
  names.push_back("1");
  jet.set_basis_names(std::move(names));
  for (std::size_t i = 0; i <= n; ++i) {
    const auto image = sharp_s(i).as_linear();
    for (std::size_t alpha = 0; alpha < n; ++alpha) jet.set_anchor(alpha, i, image[alpha]);
  }
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t k = i + 1; k <= n; ++k) {
      const AlgebroidSection value = AntiTensor::scalar(c.ring(), n + 1, s.at({static_cast<int>(i), static_cast<int>(k)}));
      const AlgebroidSection bracket =
          calc.lie(sharp_s(i), eps(k)) - calc.lie(sharp_s(k), eps(i)) - calc.d(value);
      jet.set_bracket(i, k, bracket.as_linear());
    }
  const Check valid = algebroid_validate(jet);
  if (!valid.ok) throw InternalInconsistency("1-jet algebroid of a Jacobi structure failed validation");
  return jet;
}

AlgebroidSection jet_cocycle(const JacobiPair& j) {
  j.validate();
  return contract(cocycle(j.chart()), to_section({j.pi, j.e}));
}

JacobiCompat jacobi_compat(const JacobiPair& j1, const JacobiPair& j2) {
  j1.validate();
  j2.validate();
  require_same_chart(j1.chart(), j2.chart(), "Jacobi compatibility");
  for (const JacobiPair* j : {&j1, &j2}) {
    const JacobiVerdict v = is_jacobi(*j);
    if (!v.ok()) throw PreconditionFailure("compatibility needs two Jacobi structures", v.schouten.residuals);
  }
  JacobiCompat out;
  out.sum_is_jacobi = is_jacobi({j1.pi + j2.pi, j1.e + j2.e}).schouten;
  out.mixed_bracket.absorb(
      tagged("[(pi1,E1),(pi2,E2)]", twisted_gerstenhaber({j1.pi, j1.e}, {j2.pi, j2.e})));
  const CompatReport jets = compat_check(first_jet_algebroid(j1), first_jet_algebroid(j2));
  if (!jets.compatible()) {
    out.jet_algebroids.ok = false;
    out.jet_algebroids.residuals = jets.jacobi_theta.residuals;
    out.jet_algebroids.residuals.insert(out.jet_algebroids.residuals.end(), jets.anticommutator.residuals.begin(),
                                        jets.anticommutator.residuals.end());
  }
  if (out.sum_is_jacobi.ok != out.mixed_bracket.ok || out.mixed_bracket.ok != out.jet_algebroids.ok)
    throw InternalInconsistency("Jacobi compatibility criteria disagree");
  return out;
}

}  // namespace pncalc
