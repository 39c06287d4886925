#pragma once

// Random generators shared by the property tests.

#include <random>
#include <vector>

#include "pncalc/cartan.hpp"
#include "pncalc/polynomial.hpp"

namespace testutil {

inline pncalc::Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-4, 4);
  std::uniform_int_distribution<long> den(1, 3);
  return pncalc::Rational(num(rng), den(rng));
}

/// Up to `max_terms` random terms of total degree <= max_degree.
inline pncalc::Polynomial random_polynomial(std::mt19937& rng, const pncalc::Ring& ring, int max_degree,
                                            int max_terms) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<std::size_t> var(0, ring->size() - 1);
  std::uniform_int_distribution<int> deg(0, max_degree);
  pncalc::Polynomial p(ring);
  const int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    pncalc::Exponents e(ring->size(), 0);
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) ++e[var(rng)];
    p += pncalc::Polynomial::monomial(ring, e, random_rational(rng));
  }
  return p;
}

/// Random field of the given degree with a few components.
template <class Tag>
pncalc::Field<Tag> random_field(std::mt19937& rng, const pncalc::Chart& chart, int degree, int coeff_degree,
                                int max_components = 3) {
  pncalc::Field<Tag> f(chart, degree);
  std::uniform_int_distribution<int> ncomp(1, max_components);
  std::uniform_int_distribution<int> idx(0, static_cast<int>(chart.dim()) - 1);
  const int n = ncomp(rng);
  for (int c = 0; c < n; ++c) {
    pncalc::IndexTuple t;
    for (int k = 0; k < degree; ++k) t.push_back(idx(rng));
    f.add(t, random_polynomial(rng, chart.ring(), coeff_degree, 2));
  }
  return f;
}

}  // namespace testutil
