#include "pncalc/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

#include "pncalc/errors.hpp"

namespace pncalc {

Ring make_ring(std::vector<std::string> names) {
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

bool same_ring(const Ring& a, const Ring& b) {
  if (a == b) return true;
  if (!a || !b) return (!a || a->empty()) && (!b || b->empty());
  return *a == *b;
}

std::size_t variable_index(const Ring& ring, std::string_view name) {
  if (ring) {
    const auto it = std::find(ring->begin(), ring->end(), name);
    if (it != ring->end()) return static_cast<std::size_t>(it - ring->begin());
  }
  throw InputError("unknown variable '" + std::string(name) + "'");
}

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
  const auto da = std::accumulate(a.begin(), a.end(), 0UL);
  const auto db = std::accumulate(b.begin(), b.end(), 0UL);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Polynomial::Polynomial(Rational constant) {
  if (!constant.is_zero()) terms_.emplace(Exponents{}, std::move(constant));
}

Polynomial Polynomial::constant(Ring ring, const Rational& c) {
  Polynomial p(std::move(ring));
  if (!c.is_zero()) p.terms_.emplace(Exponents(p.num_vars(), 0), c);
  return p;
}

Polynomial Polynomial::variable(Ring ring, std::size_t index) {
  Polynomial p(std::move(ring));
  if (index >= p.num_vars()) throw InputError("variable index out of range");
  Exponents e(p.num_vars(), 0);
  e[index] = 1;
  p.terms_.emplace(std::move(e), Rational(1));
  return p;
}

Polynomial Polynomial::monomial(Ring ring, Exponents exps, const Rational& c) {
  Polynomial p(std::move(ring));
  if (exps.size() != p.num_vars()) throw InputError("exponent vector length mismatch");
  if (!c.is_zero()) p.terms_.emplace(std::move(exps), c);
  return p;
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
}

Rational Polynomial::constant_term() const {
  if (terms_.empty()) return Rational(0);
  const auto& [e, c] = *terms_.begin();  // grlex puts the constant first
  return std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; }) ? c : Rational(0);
}

int Polynomial::total_degree() const {
  if (terms_.empty()) return -1;
  const auto& e = terms_.rbegin()->first;
  return static_cast<int>(std::accumulate(e.begin(), e.end(), 0U));
}

unsigned Polynomial::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.at(var));
  return d;
}

Polynomial Polynomial::promoted(const Ring& ring) const {
  if (same_ring(ring_, ring)) {
    if (ring_ == ring || !ring) return *this;
    Polynomial p(*this);
    p.ring_ = ring;
    return p;
  }
  if (!is_constant()) throw InputError("polynomials over different variable lists");
  return constant(ring, constant_term());
}

Ring Polynomial::unify(const Polynomial& o) const {
  if (same_ring(ring_, o.ring_)) return ring_ ? ring_ : o.ring_;
  if (num_vars() == 0 || (is_constant() && o.num_vars() != 0)) return o.ring_;
  if (o.num_vars() == 0 || o.is_constant()) return ring_;
  throw InputError("polynomials over different variable lists");
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  const Ring r = unify(o);
  if (ring_ != r) *this = promoted(r);
  if (o.num_vars() == num_vars()) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
  } else {
    for (const auto& [e, c] : o.promoted(r).terms_) add_term(e, c);
  }
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial Polynomial::operator-() const {
  Polynomial p(*this);
  for (auto& [e, c] : p.terms_) c = -c;
  return p;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  const Ring r = a.unify(b);
  if (a.is_zero() || b.is_zero()) return Polynomial(r);
  const Polynomial pa = a.promoted(r);
  const Polynomial pb = b.promoted(r);
  Polynomial out(r);
  const std::size_t n = out.num_vars();
  Exponents e(n);
  for (const auto& [ea, ca] : pa.terms_) {
    for (const auto& [eb, cb] : pb.terms_) {
      for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(ring_, Rational(1));
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::partial(std::size_t var) const {
  if (num_vars() == 0) return Polynomial();
  if (var >= num_vars()) throw InputError("partial derivative: variable index out of range");
  Polynomial out(ring_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    --d[var];
    out.add_term(d, c * Rational(static_cast<long>(e[var])));
  }
  return out;
}

Polynomial Polynomial::partial(std::string_view var) const {
  return partial(variable_index(ring_, var));
}

Polynomial Polynomial::substitute(std::span<const Polynomial> images, const Ring& target) const {
  if (images.size() != num_vars()) throw InputError("substitute: wrong number of images");
  Polynomial out(target);
  // Powers are cached per variable since the same exponents recur.
  std::vector<std::vector<Polynomial>> powers(images.size());
  for (const auto& [e, c] : terms_) {
    Polynomial term = constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(constant(target, Rational(1)));
      while (cache.size() <= e[i]) cache.push_back(cache.back() * images[i].promoted(target));
      term *= cache[e[i]];
    }
    out += term;
  }
  return out;
}

Polynomial Polynomial::renamed_into(const Ring& target) const {
  if (same_ring(ring_, target)) return promoted(target);
  const std::size_t n = target ? target->size() : 0;
  Polynomial out(target);
  std::vector<std::size_t> where(num_vars(), n);
  for (std::size_t i = 0; i < num_vars(); ++i) {
    const auto& name = (*ring_)[i];
    const auto it = target ? std::find(target->begin(), target->end(), name) : target->end();
    if (target && it != target->end()) where[i] = static_cast<std::size_t>(it - target->begin());
  }
  for (const auto& [e, c] : terms_) {
    Exponents t(n, 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (where[i] == n) throw InputError("variable '" + (*ring_)[i] + "' missing from target ring");
      t[where[i]] = e[i];
    }
    out.add_term(t, c);
  }
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool negative = c.sign() < 0;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const Rational mag = negative ? -c : c;
    bool wrote = false;
    if (!mag.is_one()) {
      os << mag.to_string();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << '*';
      os << (*ring_)[i];
      if (e[i] > 1) os << '^' << e[i];
      wrote = true;
    }
    if (!wrote) os << '1';
  }
  return os.str();
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (same_ring(a.ring_, b.ring_)) return a.terms_ == b.terms_;
  if (a.is_constant() && b.is_constant()) return a.constant_term() == b.constant_term();
  return false;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

}  // namespace pncalc
