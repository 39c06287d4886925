#include "pncalc/detail/leibniz_bracket.hpp"

#include <cstdlib>

#include "pncalc/detail/mutation.hpp"

namespace pncalc::detail {

namespace {

int result_degree(int p, int q) { return p + q - 1 < 0 ? 0 : p + q - 1; }

class Evaluator {
 public:
  Evaluator(const Ring& ring, std::size_t dim, const BracketRules& rules) : ring_(ring), dim_(dim), rules_(rules) {}

  // [f b_I, g b_J]
  AntiTensor monomial(const IndexTuple& pi, const Polynomial& f, const IndexTuple& qj, const Polynomial& g) const {
    const int p = static_cast<int>(pi.size());
    const int q = static_cast<int>(qj.size());
    if (q >= 2) {
      const AntiTensor a = AntiTensor::basis(ring_, dim_, {qj[0]}, g);
      const IndexTuple rest(qj.begin() + 1, qj.end());
      const AntiTensor b = AntiTensor::basis(ring_, dim_, rest, Polynomial::constant(ring_, Rational(1)));
      const Polynomial one = Polynomial::constant(ring_, Rational(1));
      AntiTensor out = wedge(monomial(pi, f, {qj[0]}, g), b);
      const long sign = ((p - 1) % 2 == 0 ? 1 : -1) * mutated_sign(1);
      AntiTensor second = wedge(a, monomial(pi, f, rest, one));
      if (sign < 0) {
        out -= second;
      } else {
        out += second;
      }
      return out;
    }
    if (p >= 2) {
      // [P, Q] = -(-1)^{(p-1)(q-1)} [Q, P]
      const bool odd = ((p - 1) * (q - 1)) % 2 != 0;
      AntiTensor swapped = monomial(qj, g, pi, f);
      return odd ? swapped : -swapped;
    }
    if (p == 1 && q == 1) return rules_.basis_bracket(pi[0], f, qj[0], g);
    if (p == 1 && q == 0) return AntiTensor::scalar(ring_, dim_, f * rules_.anchor(pi[0], g));
    if (p == 0 && q == 1) return AntiTensor::scalar(ring_, dim_, -(g * rules_.anchor(qj[0], f)));
    return AntiTensor(ring_, dim_, 0);
  }

 private:
  const Ring& ring_;
  std::size_t dim_;
  const BracketRules& rules_;
};

}  // namespace

AntiTensor leibniz_bracket(const AntiTensor& p, const AntiTensor& q, const BracketRules& rules) {
  if (p.dim() != q.dim()) throw InputError("bracket: dimension mismatch");
  const Ring& ring = p.ring() ? p.ring() : q.ring();
  const Evaluator ev(ring, p.dim(), rules);
  AntiTensor out(ring, p.dim(), result_degree(p.degree(), q.degree()));
  for (const auto& [pi, f] : p.components())
    for (const auto& [qj, g] : q.components()) out += ev.monomial(pi, f, qj, g);
  return out;
}

}  // namespace pncalc::detail
