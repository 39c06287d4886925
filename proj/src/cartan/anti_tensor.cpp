#include "pncalc/anti_tensor.hpp"

#include <algorithm>
#include <numeric>

namespace pncalc {

int sort_with_sign(IndexTuple& idx) {
  int sign = 1;
  // insertion sort; tuples are short
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  return sign;
}

AntiTensor::AntiTensor(Ring ring, std::size_t dim, int degree)
    : ring_(std::move(ring)), dim_(dim), degree_(degree) {
  if (degree < 0) throw InputError("negative tensor degree");
}

AntiTensor AntiTensor::scalar(Ring ring, std::size_t dim, const Polynomial& f) {
  AntiTensor t(std::move(ring), dim, 0);
  t.add({}, f);
  return t;
}

AntiTensor AntiTensor::basis(Ring ring, std::size_t dim, IndexTuple idx, const Polynomial& coef) {
  AntiTensor t(std::move(ring), dim, static_cast<int>(idx.size()));
  t.add(std::move(idx), coef);
  return t;
}

AntiTensor AntiTensor::linear(Ring ring, std::span<const Polynomial> coeffs) {
  AntiTensor t(std::move(ring), coeffs.size(), 1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) t.add({static_cast<int>(i)}, coeffs[i]);
  return t;
}

Polynomial AntiTensor::at(IndexTuple idx) const {
  const int s = sort_with_sign(idx);
  if (s == 0) return Polynomial(ring_);
  const auto it = comps_.find(idx);
  if (it == comps_.end()) return Polynomial(ring_);
  return s > 0 ? it->second : -it->second;
}

std::vector<Polynomial> AntiTensor::as_linear() const {
  if (degree_ != 1) throw InputError("expected a degree-1 tensor");
  std::vector<Polynomial> out(dim_, Polynomial(ring_));
  for (const auto& [idx, c] : comps_) out[static_cast<std::size_t>(idx[0])] = c;
  return out;
}

void AntiTensor::add(IndexTuple idx, const Polynomial& coef) {
  if (coef.is_zero()) return;
  if (static_cast<int>(idx.size()) != degree_) throw InputError("index tuple length does not match degree");
  for (int i : idx)
    if (i < 0 || static_cast<std::size_t>(i) >= dim_) throw InputError("tensor index out of range");
  const int s = sort_with_sign(idx);
  if (s == 0) return;
  auto [it, inserted] = comps_.try_emplace(std::move(idx), Polynomial(ring_));
  if (s > 0) {
    it->second += coef;
  } else {
    it->second -= coef;
  }
  if (it->second.is_zero()) comps_.erase(it);
}

void AntiTensor::check_compatible(const AntiTensor& o) const {
  if (dim_ != o.dim_ || degree_ != o.degree_) throw InputError("tensor shape mismatch");
}

AntiTensor& AntiTensor::operator+=(const AntiTensor& o) {
  check_compatible(o);
  for (const auto& [idx, c] : o.comps_) add(idx, c);
  return *this;
}

AntiTensor& AntiTensor::operator-=(const AntiTensor& o) {
  check_compatible(o);
  for (const auto& [idx, c] : o.comps_) add(idx, -c);
  return *this;
}

AntiTensor& AntiTensor::operator*=(const Polynomial& f) {
  for (auto it = comps_.begin(); it != comps_.end();) {
    it->second *= f;
    it = it->second.is_zero() ? comps_.erase(it) : std::next(it);
  }
  return *this;
}

AntiTensor AntiTensor::operator-() const {
  AntiTensor t(*this);
  for (auto& [idx, c] : t.comps_) c = -c;
  return t;
}

bool operator==(const AntiTensor& a, const AntiTensor& b) {
  return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
}

AntiTensor AntiTensor::map_coefficients(const std::function<Polynomial(const Polynomial&)>& fn) const {
  AntiTensor t(ring_, dim_, degree_);
  for (const auto& [idx, c] : comps_) t.add(idx, fn(c));
  return t;
}

AntiTensor wedge(const AntiTensor& a, const AntiTensor& b) {
  if (a.dim() != b.dim()) throw InputError("wedge: dimension mismatch");
  AntiTensor out(a.ring() ? a.ring() : b.ring(), a.dim(), a.degree() + b.degree());
  for (const auto& [ia, ca] : a.components()) {
    for (const auto& [ib, cb] : b.components()) {
      IndexTuple idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      out.add(std::move(idx), ca * cb);
    }
  }
  return out;
}

AntiTensor contract(std::span<const Polynomial> c, const AntiTensor& t) {
  if (t.degree() == 0) throw InputError("contraction of a degree-0 tensor");
  if (c.size() != t.dim()) throw InputError("contraction: dimension mismatch");
  AntiTensor out(t.ring(), t.dim(), t.degree() - 1);
  for (const auto& [idx, coef] : t.components()) {
    for (std::size_t a = 0; a < idx.size(); ++a) {
      const Polynomial& ca = c[static_cast<std::size_t>(idx[a])];
      if (ca.is_zero()) continue;
      IndexTuple rest;
      rest.reserve(idx.size() - 1);
      for (std::size_t b = 0; b < idx.size(); ++b)
        if (b != a) rest.push_back(idx[b]);
      out.add(std::move(rest), (a % 2 == 0 ? ca : -ca) * coef);
    }
  }
  return out;
}

namespace {

// det[args[r][idx[s]]] by Leibniz expansion over permutations.
Polynomial minor_det(const IndexTuple& idx, std::span<const std::vector<Polynomial>> args, const Ring& ring) {
  const std::size_t k = idx.size();
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  Polynomial total(ring);
  do {
    IndexTuple p(perm.begin(), perm.end());
    const int s = sort_with_sign(p);
    Polynomial term = Polynomial::constant(ring, Rational(s));
    for (std::size_t r = 0; r < k && !term.is_zero(); ++r)
      term *= args[r][static_cast<std::size_t>(idx[static_cast<std::size_t>(perm[r])])];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

Polynomial evaluate(const AntiTensor& t, std::span<const std::vector<Polynomial>> args) {
  if (static_cast<int>(args.size()) != t.degree()) throw InputError("evaluate: wrong number of arguments");
  for (const auto& a : args)
    if (a.size() != t.dim()) throw InputError("evaluate: argument dimension mismatch");
  Polynomial total(t.ring());
  for (const auto& [idx, coef] : t.components()) total += coef * minor_det(idx, args, t.ring());
  return total;
}

std::string index_key(const IndexTuple& idx) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(idx[i] + 1);
  }
  return s;
}

std::vector<Residual> residuals_of(const std::string& name, const AntiTensor& t) {
  std::vector<Residual> out;
  for (const auto& [idx, c] : t.components()) out.push_back({name + "[" + index_key(idx) + "]", c.to_string()});
  return out;
}

}  // namespace pncalc
