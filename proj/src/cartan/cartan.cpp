#include "pncalc/cartan.hpp"

#include "pncalc/detail/leibniz_bracket.hpp"

namespace pncalc {

namespace {

detail::BracketRules tangent_rules(const Chart& chart) {
  // Coordinate vector fields commute, so [f d_i, g d_j] = f d_i(g) d_j - g d_j(f) d_i.
  return detail::BracketRules{
      [chart](int i, const Polynomial& f, int j, const Polynomial& g) {
        AntiTensor out(chart.ring(), chart.dim(), 1);
        out.add({j}, f * g.partial(static_cast<std::size_t>(i)));
        out.add({i}, -(g * f.partial(static_cast<std::size_t>(j))));
        return out;
      },
      [](int i, const Polynomial& g) { return g.partial(static_cast<std::size_t>(i)); }};
}

}  // namespace

Polynomial apply_vector(const MultiVector& x, const Polynomial& f) {
  if (x.degree() != 1) throw InputError("expected a vector field");
  const Polynomial g = f.promoted(x.chart().ring());
  Polynomial out = x.chart().zero();
  for (const auto& [idx, c] : x.tensor().components()) out += c * g.partial(static_cast<std::size_t>(idx[0]));
  return out;
}

DiffForm exterior_d(const DiffForm& omega) {
  const Chart& chart = omega.chart();
  DiffForm out(chart, omega.degree() + 1);
  for (const auto& [idx, c] : omega.tensor().components()) {
    for (std::size_t j = 0; j < chart.dim(); ++j) {
      Polynomial dc = c.partial(j);
      if (dc.is_zero()) continue;
      IndexTuple k{static_cast<int>(j)};
      k.insert(k.end(), idx.begin(), idx.end());
      out.add(std::move(k), dc);
    }
  }
  return out;
}

DiffForm interior(const MultiVector& x, const DiffForm& omega) {
  require_same_chart(x.chart(), omega.chart(), "interior product");
  if (x.degree() != 1) throw InputError("interior product needs a vector field");
  if (omega.degree() == 0) throw InputError("interior product of a 0-form");
  return DiffForm(omega.chart(), contract(x.coefficients(), omega.tensor()));
}

DiffForm lie_derivative(const MultiVector& x, const DiffForm& omega) {
  require_same_chart(x.chart(), omega.chart(), "Lie derivative");
  if (omega.degree() == 0) return DiffForm::scalar(omega.chart(), apply_vector(x, omega.at({})));
  return interior(x, exterior_d(omega)) + exterior_d(interior(x, omega));
}

MultiVector lie_bracket(const MultiVector& x, const MultiVector& y) {
  if (x.degree() != 1 || y.degree() != 1) throw InputError("Lie bracket needs vector fields");
  return schouten(x, y);
}

MultiVector schouten(const MultiVector& p, const MultiVector& q) {
  require_same_chart(p.chart(), q.chart(), "Schouten bracket");
  return MultiVector(p.chart(), detail::leibniz_bracket(p.tensor(), q.tensor(), tangent_rules(p.chart())));
}

Polynomial pair(const MultiVector& p, const std::vector<DiffForm>& forms) {
  std::vector<std::vector<Polynomial>> args;
  for (const auto& f : forms) {
    require_same_chart(p.chart(), f.chart(), "pairing");
    args.push_back(f.coefficients());
  }
  return evaluate(p.tensor(), args);
}

}  // namespace pncalc
