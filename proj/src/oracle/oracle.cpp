#include "oracle.hpp"

namespace pncalc::oracle {

namespace {

// Right derivative with respect to theta_i.
AntiTensor right_derivative(const AntiTensor& t, int i) {
  AntiTensor out(t.ring(), t.dim(), t.degree() - 1);
  for (const auto& [idx, c] : t.components()) {
    for (std::size_t a = 0; a < idx.size(); ++a) {
      if (idx[a] != i) continue;
      IndexTuple rest = idx;
      rest.erase(rest.begin() + static_cast<long>(a));
      // moving theta_i past the (k-1-a) factors to its right
      const bool odd = (idx.size() - 1 - a) % 2 != 0;
      out.add(rest, odd ? -c : c);
    }
  }
  return out;
}

AntiTensor coefficient_partial(const AntiTensor& t, std::size_t var) {
  return t.map_coefficients([var](const Polynomial& c) { return c.partial(var); });
}

}  // namespace

MultiVector schouten_coordinate(const MultiVector& p, const MultiVector& q) {
  require_same_chart(p.chart(), q.chart(), "Schouten oracle");
  const int pd = p.degree();
  const int qd = q.degree();
  const Chart& chart = p.chart();
  const int out_degree = pd + qd - 1 < 0 ? 0 : pd + qd - 1;
  AntiTensor out(chart.ring(), chart.dim(), out_degree);
  if (pd + qd == 0) return MultiVector(chart, out);
  const bool odd = ((pd - 1) * (qd - 1)) % 2 != 0;
  for (std::size_t i = 0; i < chart.dim(); ++i) {
    const int ii = static_cast<int>(i);
    if (pd > 0) out += wedge(right_derivative(p.tensor(), ii), coefficient_partial(q.tensor(), i));
    if (qd > 0) {
      const AntiTensor second = wedge(right_derivative(q.tensor(), ii), coefficient_partial(p.tensor(), i));
      if (odd) {
        out += second;
      } else {
        out -= second;
      }
    }
  }
  return MultiVector(chart, out);
}

}  // namespace pncalc::oracle
