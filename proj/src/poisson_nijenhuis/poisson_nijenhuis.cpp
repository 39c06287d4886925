#include "pncalc/poisson_nijenhuis.hpp"

#include <future>

#include "pncalc/algebroid.hpp"
#include "pncalc/detail/mutation.hpp"

namespace pncalc {

namespace {

std::vector<Residual> matrix_residuals(const std::string& name, const PolyMatrix& m) {
  std::vector<Residual> out;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero())
        out.push_back({name + "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]", m(i, j).to_string()});
  return out;
}

std::string basis_form_name(std::size_t i) { return "dx" + std::to_string(i + 1); }

}  // namespace

// --- TensorOneOne ---------------------------------------------------------------

TensorOneOne::TensorOneOne(Chart chart, PolyMatrix entries) : chart_(std::move(chart)), entries_(std::move(entries)) {
  if (entries_.rows() != chart_.dim() || entries_.cols() != chart_.dim())
    throw InputError("(1,1)-tensor must be a square matrix of the chart dimension");
  for (std::size_t i = 0; i < chart_.dim(); ++i)
    for (std::size_t j = 0; j < chart_.dim(); ++j) entries_(i, j) = entries_(i, j).promoted(chart_.ring());
}

TensorOneOne TensorOneOne::identity(const Chart& chart) {
  return TensorOneOne(chart, PolyMatrix::identity(chart.ring(), chart.dim()));
}

TensorOneOne TensorOneOne::zero(const Chart& chart) {
  return TensorOneOne(chart, PolyMatrix(chart.ring(), chart.dim(), chart.dim()));
}

TensorOneOne TensorOneOne::scaled_identity(const Chart& chart, const Polynomial& f) {
  return TensorOneOne(chart, PolyMatrix::identity(chart.ring(), chart.dim()) * f.promoted(chart.ring()));
}

TensorOneOne TensorOneOne::diagonal(const Chart& chart, const std::vector<Polynomial>& diag) {
  if (diag.size() != chart.dim()) throw InputError("diagonal length does not match chart dimension");
  PolyMatrix m(chart.ring(), chart.dim(), chart.dim());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i].promoted(chart.ring());
  return TensorOneOne(chart, m);
}

MultiVector TensorOneOne::apply(const MultiVector& x) const {
  require_same_chart(chart_, x.chart(), "(1,1)-tensor action");
  if (x.degree() != 1) throw InputError("(1,1)-tensor acts on vector fields");
  const auto xs = x.coefficients();
  std::vector<Polynomial> out(chart_.dim(), chart_.zero());
  for (std::size_t i = 0; i < chart_.dim(); ++i)
    for (std::size_t j = 0; j < chart_.dim(); ++j)
      if (!xs[j].is_zero()) out[i] += entries_(i, j) * xs[j];
  return MultiVector::linear(chart_, out);
}

DiffForm TensorOneOne::apply_dual(const DiffForm& alpha) const {
  require_same_chart(chart_, alpha.chart(), "(1,1)-tensor dual action");
  if (alpha.degree() != 1) throw InputError("dual (1,1)-tensor acts on 1-forms");
  const auto as = alpha.coefficients();
  std::vector<Polynomial> out(chart_.dim(), chart_.zero());
  for (std::size_t j = 0; j < chart_.dim(); ++j)
    for (std::size_t i = 0; i < chart_.dim(); ++i)
      if (!as[i].is_zero()) out[j] += as[i] * entries_(i, j);
  return DiffForm::linear(chart_, out);
}

TensorOneOne TensorOneOne::pow(unsigned k) const { return TensorOneOne(chart_, entries_.pow(k)); }

TensorOneOne operator*(const TensorOneOne& a, const TensorOneOne& b) {
  require_same_chart(a.chart_, b.chart_, "(1,1)-tensor composition");
  return TensorOneOne(a.chart_, a.entries_ * b.entries_);
}

std::vector<Residual> TensorOneOne::residuals(const std::string& name) const {
  return matrix_residuals(name, entries_);
}

// --- bivectors --------------------------------------------------------------------

PolyMatrix sharp_matrix(const MultiVector& pi) {
  if (pi.degree() != 2) throw InputError("sharp map needs a bivector");
  const std::size_t n = pi.chart().dim();
  PolyMatrix m(pi.chart().ring(), n, n);
  for (const auto& [idx, c] : pi.tensor().components()) {
    const auto i = static_cast<std::size_t>(idx[0]);
    const auto j = static_cast<std::size_t>(idx[1]);
    m(j, i) = c;   // pi#(dx^i) has d_j component pi^{ij}
    m(i, j) = -c;
  }
  return m;
}

MultiVector sharp(const MultiVector& pi, const DiffForm& alpha) {
  require_same_chart(pi.chart(), alpha.chart(), "sharp");
  if (alpha.degree() != 1) throw InputError("sharp map acts on 1-forms");
  const PolyMatrix m = sharp_matrix(pi);
  const auto as = alpha.coefficients();
  std::vector<Polynomial> out(pi.chart().dim(), pi.chart().zero());
  for (std::size_t j = 0; j < out.size(); ++j)
    for (std::size_t i = 0; i < out.size(); ++i)
      if (!as[i].is_zero()) out[j] += m(j, i) * as[i];
  return MultiVector::linear(pi.chart(), out);
}

MultiVector bivector_from_sharp(const Chart& chart, const PolyMatrix& s) {
  if (!s.is_antisymmetric()) throw InputError("sharp matrix is not antisymmetric");
  MultiVector pi(chart, 2);
  for (std::size_t i = 0; i < chart.dim(); ++i)
    for (std::size_t j = i + 1; j < chart.dim(); ++j) pi.add({static_cast<int>(i), static_cast<int>(j)}, s(j, i));
  return pi;
}

Check is_poisson(const MultiVector& pi) {
  if (pi.degree() != 2) throw InputError("Poisson check needs a bivector");
  Check c;
  c.absorb(schouten(pi, pi).residuals("[pi,pi]"));
  return c;
}

DiffForm koszul_bracket(const MultiVector& pi, const DiffForm& alpha, const DiffForm& beta) {
  require_same_chart(pi.chart(), alpha.chart(), "Koszul bracket");
  require_same_chart(pi.chart(), beta.chart(), "Koszul bracket");
  const DiffForm exact = exterior_d(DiffForm::scalar(pi.chart(), pair(pi, {alpha, beta})));
  DiffForm out = lie_derivative(sharp(pi, alpha), beta) - lie_derivative(sharp(pi, beta), alpha);
  if (detail::mutated_sign(2) > 0) {
    out -= exact;
  } else {
    out += exact;
  }
  return out;
}

// --- (1,1)-tensors ------------------------------------------------------------------

MultiVector torsion_on(const TensorOneOne& n, const MultiVector& x, const MultiVector& y) {
  const MultiVector nx = n.apply(x);
  const MultiVector ny = n.apply(y);
  return lie_bracket(nx, ny) - n.apply(lie_bracket(nx, y) + lie_bracket(x, ny) - n.apply(lie_bracket(x, y)));
}

std::vector<DiffForm> nijenhuis_torsion(const TensorOneOne& n) {
  const Chart& c = n.chart();
  std::vector<DiffForm> tau(c.dim(), DiffForm(c, 2));
  for (std::size_t i = 0; i < c.dim(); ++i)
    for (std::size_t j = i + 1; j < c.dim(); ++j) {
      const int ii = static_cast<int>(i);
      const int jj = static_cast<int>(j);
      const auto value = torsion_on(n, MultiVector::basis(c, {ii}), MultiVector::basis(c, {jj})).coefficients();
      for (std::size_t k = 0; k < c.dim(); ++k) tau[k].add({ii, jj}, value[k]);
    }
  return tau;
}

Check is_nijenhuis(const TensorOneOne& n) {
  Check c;
  const auto tau = nijenhuis_torsion(n);
  for (std::size_t k = 0; k < tau.size(); ++k) c.absorb(tau[k].residuals("tau_N^" + std::to_string(k + 1)));
  return c;
}

MultiVector deformed_bracket(const TensorOneOne& n, const MultiVector& x, const MultiVector& y) {
  return lie_bracket(n.apply(x), y) + lie_bracket(x, n.apply(y)) - n.apply(lie_bracket(x, y));
}

DiffForm i_n(const TensorOneOne& n, const DiffForm& omega) {
  require_same_chart(n.chart(), omega.chart(), "i_N");
  const Chart& c = n.chart();
  DiffForm out(c, omega.degree());
  for (const auto& [idx, coef] : omega.tensor().components()) {
    for (std::size_t a = 0; a < idx.size(); ++a) {
      const auto row = static_cast<std::size_t>(idx[a]);
      for (std::size_t j = 0; j < c.dim(); ++j) {
        if (n(row, j).is_zero()) continue;
        IndexTuple t = idx;
        t[a] = static_cast<int>(j);
        out.add(std::move(t), coef * n(row, j));
      }
    }
  }
  return out;
}

DiffForm d_n(const TensorOneOne& n, const DiffForm& omega) {
  return i_n(n, exterior_d(omega)) - exterior_d(i_n(n, omega));
}

// --- PN pairs -------------------------------------------------------------------------

PolyMatrix sharp_compatibility_defect(const MultiVector& pi, const TensorOneOne& n) {
  require_same_chart(pi.chart(), n.chart(), "sharp compatibility");
  const PolyMatrix s = sharp_matrix(pi);
  // pi# o N^* has matrix S N^T since N^* acts on coefficient columns by N^T.
  return n.matrix() * s - s * n.matrix().transposed();
}

MultiVector compose(const TensorOneOne& n, const MultiVector& pi) {
  const PolyMatrix defect = sharp_compatibility_defect(pi, n);
  if (!defect.is_zero())
    throw PreconditionFailure("N pi# != pi# N^*, so N pi is not a bivector",
                              matrix_residuals("N pi# - pi# N*", defect));
  return bivector_from_sharp(pi.chart(), n.matrix() * sharp_matrix(pi));
}

DiffForm magri_morosi(const MultiVector& pi, const TensorOneOne& n, const DiffForm& alpha, const DiffForm& beta) {
  const MultiVector npi = compose(n, pi);
  const DiffForm na = n.apply_dual(alpha);
  const DiffForm nb = n.apply_dual(beta);
  return koszul_bracket(npi, alpha, beta) -
         (koszul_bracket(pi, na, beta) + koszul_bracket(pi, alpha, nb) - n.apply_dual(koszul_bracket(pi, alpha, beta)));
}

Check PNVerdict::combined() const {
  Check c;
  for (const Check* part : {&poisson, &torsion, &sharp_compat, &concomitant}) {
    if (!part->ok) c.ok = false;
    c.residuals.insert(c.residuals.end(), part->residuals.begin(), part->residuals.end());
  }
  return c;
}

PNVerdict is_pn_pair(const MultiVector& pi, const TensorOneOne& n) {
  require_same_chart(pi.chart(), n.chart(), "PN check");
  PNVerdict v;
  v.poisson = is_poisson(pi);
  v.torsion = is_nijenhuis(n);
  v.sharp_compat.absorb(matrix_residuals("N pi# - pi# N*", sharp_compatibility_defect(pi, n)));
  if (!v.sharp_compat.ok) {
    v.concomitant.ok = false;  // undefined without a bivector N pi
    return v;
  }
  const Chart& c = pi.chart();
  for (std::size_t i = 0; i < c.dim(); ++i)
    for (std::size_t j = i + 1; j < c.dim(); ++j) {
      const DiffForm value = magri_morosi(pi, n, DiffForm::basis(c, {static_cast<int>(i)}),
                                          DiffForm::basis(c, {static_cast<int>(j)}));
      v.concomitant.absorb(value.residuals("C(" + basis_form_name(i) + "," + basis_form_name(j) + ")"));
    }
  return v;
}

bool Hierarchy::ok() const {
  for (const auto& c : certificates)
    if (!c.bracket.is_zero()) return false;
  return true;
}

Hierarchy hierarchy(const MultiVector& pi, const TensorOneOne& n, unsigned kmax) {
  const PNVerdict v = is_pn_pair(pi, n);
  if (!v.ok()) throw PreconditionFailure("not a Poisson-Nijenhuis pair", v.combined().residuals);
  Hierarchy h;
  TensorOneOne power = TensorOneOne::identity(pi.chart());
  for (unsigned k = 0; k <= kmax; ++k) {
    h.bivectors.push_back(compose(power, pi));
    power = power * n;
  }
  // Pairwise brackets are independent; fan them out over read-only inputs.
  std::vector<std::future<HierarchyCertificate>> jobs;
  for (unsigned k = 0; k <= kmax; ++k)
    for (unsigned l = k; l <= kmax; ++l)
      jobs.push_back(std::async(std::launch::async, [&h, k, l] {
        return HierarchyCertificate{static_cast<int>(k), static_cast<int>(l), schouten(h.bivectors[k], h.bivectors[l])};
      }));
  for (auto& j : jobs) h.certificates.push_back(j.get());
  return h;
}

TensorOneOne complementary_build(const MultiVector& pi, const DiffForm& omega) {
  require_same_chart(pi.chart(), omega.chart(), "complementary form");
  if (omega.degree() != 2) throw InputError("complementary form must be a 2-form");
  const Chart& c = pi.chart();
  const AlgebroidData cotangent = cotangent_algebroid(pi);  // refuses non-Poisson pi

  std::vector<Residual> failures;
  const AntiTensor self = gerstenhaber_bracket(cotangent, omega.tensor(), omega.tensor());
  auto r1 = residuals_of("[omega,omega]_pi", self);
  failures.insert(failures.end(), r1.begin(), r1.end());
  const DiffForm domega = exterior_d(omega);
  for (std::size_t i = 0; i < c.dim(); ++i) {
    const MultiVector x = sharp(pi, DiffForm::basis(c, {static_cast<int>(i)}));
    auto r = interior(x, domega).residuals("i_{pi# " + basis_form_name(i) + "} d omega");
    failures.insert(failures.end(), r.begin(), r.end());
  }
  if (!failures.empty()) throw PreconditionFailure("omega is not a suitable complementary form", failures);

  // omega#(d_j) = i_{d_j} omega has dx^k component omega_{jk}.
  PolyMatrix w(c.ring(), c.dim(), c.dim());
  for (std::size_t k = 0; k < c.dim(); ++k)
    for (std::size_t j = 0; j < c.dim(); ++j) w(k, j) = omega.at({static_cast<int>(j), static_cast<int>(k)});
  TensorOneOne n(c, sharp_matrix(pi) * w);
  if (!is_pn_pair(pi, n).ok())
    throw InternalInconsistency("complementary form produced a tensor that is not PN-compatible");
  return n;
}

Check holomorphic_check(const MultiVector& pi_real, const MultiVector& pi_imag, const TensorOneOne& j) {
  require_same_chart(pi_real.chart(), j.chart(), "holomorphic check");
  require_same_chart(pi_imag.chart(), j.chart(), "holomorphic check");
  const PolyMatrix j2 = (j * j).matrix() + PolyMatrix::identity(j.chart().ring(), j.chart().dim());
  if (!j2.is_zero()) throw PreconditionFailure("J is not almost complex", matrix_residuals("J^2 + Id", j2));
  Check c = is_pn_pair(pi_imag, j).combined();
  c.absorb(matrix_residuals("pi_R# - J pi_I#", sharp_matrix(pi_real) - j.matrix() * sharp_matrix(pi_imag)));
  return c;
}

}  // namespace pncalc
