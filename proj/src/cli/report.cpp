#include "pncalc/report.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

namespace pncalc {

using nlohmann::json;

namespace {

template <class T>
const T& need(const std::optional<T>& block, const char* name) {
  if (!block) throw InputError(std::string("this command needs a \"") + name + "\" block");
  return *block;
}

const std::vector<DiffForm>& two_forms(const Document& d) {
  const auto& forms = need(d.forms, "forms");
  if (forms.size() != 2 || forms[0].degree() != 1 || forms[1].degree() != 1)
    throw InputError("\"forms\" must hold two 1-forms");
  return forms;
}

Report computed(std::string command, json data) {
  Report r;
  r.command = std::move(command);
  r.data = std::move(data);
  return r;
}

Check merge(std::initializer_list<const Check*> parts) {
  Check out;
  for (const Check* c : parts) {
    if (!c->ok) out.ok = false;
    out.residuals.insert(out.residuals.end(), c->residuals.begin(), c->residuals.end());
  }
  return out;
}

const JacobiPair& jacobi_at(const Document& d, std::size_t i) {
  const auto& list = need(d.jacobi, "jacobi");
  if (list.size() <= i) throw InputError("this command needs " + std::to_string(i + 1) + " Jacobi pairs");
  return list[i];
}

const AlgebroidData& pair_at(const Document& d, std::size_t i) { return need(d.algebroid_pair, "algebroid_pair")[i]; }

const MultiVector& groupoid_bivector(const Document& d) {
  return need(need(d.pair_groupoid, "pair_groupoid").bivector, "pair_groupoid.bivector");
}
const TensorOneOne& groupoid_tensor(const Document& d) {
  return need(need(d.pair_groupoid, "pair_groupoid").tensor11, "pair_groupoid.tensor11");
}

std::vector<CommandInfo> build_commands() {
  using D = const Document&;
  using O = const CommandOptions&;
  std::vector<CommandInfo> c;
  c.push_back({"", "check-poisson", "[pi, pi] = 0 for the bivector",
               [](D d, O) { return check_report("check-poisson", is_poisson(need(d.bivector, "bivector"))); }});
  c.push_back({"", "check-nijenhuis", "Nijenhuis torsion of tensor11 vanishes",
               [](D d, O) { return check_report("check-nijenhuis", is_nijenhuis(need(d.tensor11, "tensor11"))); }});
  c.push_back({"", "check-pn", "(bivector, tensor11) is a Poisson-Nijenhuis pair", [](D d, O) {
                 return check_report("check-pn", is_pn_pair(need(d.bivector, "bivector"), need(d.tensor11, "tensor11")).combined());
               }});
  c.push_back({"", "torsion", "Nijenhuis torsion components of tensor11", [](D d, O) {
                 const auto t = nijenhuis_torsion(need(d.tensor11, "tensor11"));
                 json out = json::object();
                 for (std::size_t k = 0; k < t.size(); ++k)
                   if (!t[k].is_zero()) out[std::to_string(k + 1)] = components_json(t[k].tensor());
                 return computed("torsion", {{"torsion", out}});
               }});
  c.push_back({"", "koszul", "Koszul bracket of the two 1-forms", [](D d, O) {
                 const auto& f = two_forms(d);
                 return computed("koszul", {{"bracket", field_json(koszul_bracket(need(d.bivector, "bivector"), f[0], f[1]).tensor())}});
               }});
  c.push_back({"", "concomitant", "Magri-Morosi concomitant on the two 1-forms", [](D d, O) {
                 const auto& f = two_forms(d);
                 const DiffForm v = magri_morosi(need(d.bivector, "bivector"), need(d.tensor11, "tensor11"), f[0], f[1]);
                 return computed("concomitant", {{"concomitant", field_json(v.tensor())}});
               }});
  c.push_back({"", "hierarchy", "brackets [N^k pi, N^l pi] for k <= l <= max-order", [](D d, O o) {
                 const Hierarchy h = hierarchy(need(d.bivector, "bivector"), need(d.tensor11, "tensor11"), o.max_order);
                 Check check;
                 for (const auto& cert : h.certificates)
                   check.absorb(cert.bracket.residuals("[pi_" + std::to_string(cert.k) + ",pi_" + std::to_string(cert.l) + "]"));
                 Report r = check_report("hierarchy", check);
                 json list = json::array();
                 for (const auto& b : h.bivectors) list.push_back(components_json(b.tensor()));
                 r.data = {{"bivectors", list}};
                 return r;
               }});
  c.push_back({"", "complementary", "N = pi# omega# from a complementary 2-form", [](D d, O) {
                 const TensorOneOne n = complementary_build(need(d.bivector, "bivector"), need(d.form, "form"));
                 return computed("complementary", {{"tensor11", matrix_json(n.matrix())}});
               }});
  c.push_back({"", "holomorphic", "real form of a holomorphic Poisson structure", [](D d, O) {
                 const auto& h = need(d.holomorphic, "holomorphic");
                 return check_report("holomorphic", holomorphic_check(h.real, h.imag, h.j));
               }});

  c.push_back({"algebroid", "validate", "Jacobi identity and anchor morphism", [](D d, O) {
                 return check_report("algebroid validate", algebroid_validate(need(d.algebroid, "algebroid")));
               }});
  c.push_back({"algebroid", "diff", "algebroid differential of the section", [](D d, O) {
                 const auto s = algebroid_differential(need(d.algebroid, "algebroid"), need(d.section, "section"));
                 return computed("algebroid diff", {{"section", field_json(s)}});
               }});
  c.push_back({"algebroid", "dual-poisson", "fiber-linear Poisson structure on the dual", [](D d, O) {
                 const MultiVector pi = dual_linear_poisson(need(d.algebroid, "algebroid"));
                 return computed("algebroid dual-poisson", {{"chart", chart_json(pi.chart())}, {"bivector", components_json(pi.tensor())}});
               }});
  c.push_back({"algebroid", "compat", "three compatibility certificates for algebroid_pair", [](D d, O) {
                 const CompatReport r = compat_check(pair_at(d, 0), pair_at(d, 1));
                 Report out = check_report("algebroid compat", merge({&r.jacobi_theta, &r.anticommutator, &r.dual_poisson}));
                 out.data = {{"jacobi_theta", r.jacobi_theta.ok}, {"anticommutator", r.anticommutator.ok}, {"dual_poisson", r.dual_poisson.ok}};
                 return out;
               }});
  c.push_back({"algebroid", "bialgebroid", "algebroid_pair = (A, A*) is a Lie bialgebroid", [](D d, O) {
                 return check_report("algebroid bialgebroid", bialgebroid_check(pair_at(d, 0), pair_at(d, 1)));
               }});
  c.push_back({"algebroid", "pn-bialgebroid", "tangent-lift PN bialgebroid of (bivector, tensor11)", [](D d, O) {
                 const auto v = pn_bialgebroid_check(need(d.bivector, "bivector"), need(d.tensor11, "tensor11"));
                 Report r = check_report("algebroid pn-bialgebroid", v.combined());
                 r.data = {{"chart", chart_json(v.lifted_pi.chart())},
                           {"bivector", components_json(v.lifted_pi.tensor())},
                           {"tensor11", matrix_json(v.lifted_n.matrix())}};
                 return r;
               }});

  c.push_back({"jacobi", "check", "Jacobi identities for the first pair", [](D d, O) {
                 const JacobiVerdict v = is_jacobi(jacobi_at(d, 0));
                 return check_report("jacobi check", merge({&v.schouten, &v.twisted}));
               }});
  c.push_back({"jacobi", "compat", "compatibility of two Jacobi pairs", [](D d, O) {
                 const JacobiCompat v = jacobi_compat(jacobi_at(d, 0), jacobi_at(d, 1));
                 return check_report("jacobi compat", merge({&v.sum_is_jacobi, &v.mixed_bracket, &v.jet_algebroids}));
               }});
  c.push_back({"jacobi", "jet-algebroid", "Lie algebroid on the 1-jet bundle", [](D d, O) {
                 return computed("jacobi jet-algebroid", {{"algebroid", algebroid_json(first_jet_algebroid(jacobi_at(d, 0)))}});
               }});

  c.push_back({"groupoid", "multiplicative", "pair_groupoid.tensor11 is multiplicative", [](D d, O) {
                 return check_report("groupoid multiplicative", multiplicativity_check_tensor(PairGroupoid(d.chart), groupoid_tensor(d)));
               }});
  c.push_back({"groupoid", "poisson", "pair_groupoid.bivector is a Poisson groupoid structure", [](D d, O) {
                 return check_report("groupoid poisson", poisson_groupoid_check(PairGroupoid(d.chart), groupoid_bivector(d)));
               }});
  c.push_back({"groupoid", "pn", "PN groupoid verdict for pair_groupoid", [](D d, O) {
                 return check_report("groupoid pn", pn_groupoid_check(PairGroupoid(d.chart), groupoid_bivector(d), groupoid_tensor(d)).combined());
               }});
  c.push_back({"groupoid", "base", "base PN structure pushed forward along s", [](D d, O) {
                 const BaseStructure b = base_structure(PairGroupoid(d.chart), groupoid_bivector(d), groupoid_tensor(d));
                 Report r = check_report("groupoid base", merge({&b.s_related, &b.hierarchy}));
                 const Check pn = b.pn.combined();
                 if (!pn.ok) r = check_report("groupoid base", merge({&pn, &b.s_related, &b.hierarchy}));
                 r.data = {{"bivector", components_json(b.pi.tensor())}, {"tensor11", matrix_json(b.n.matrix())}};
                 return r;
               }});
  c.push_back({"groupoid", "coisotropic-invariant", "submanifold is coisotropic for bivector and invariant under tensor11", [](D d, O) {
                 const AffineSubmanifold s(d.chart, need(d.submanifold, "submanifold"));
                 const auto v = coisotropic_invariant_check(need(d.bivector, "bivector"), need(d.tensor11, "tensor11"), s);
                 return check_report("groupoid coisotropic-invariant", merge({&v.coisotropic, &v.invariant, &v.hierarchy}));
               }});
  return c;
}

std::string format_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

}  // namespace

int Report::exit_code() const {
  switch (verdict) {
    case Verdict::pass: return 0;
    case Verdict::fail: return 1;
    case Verdict::error: return internal ? 3 : 2;
  }
  return 3;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::error: return "error";
  }
  return "error";
}

Report check_report(std::string command, const Check& check) {
  if (!check.ok && check.residuals.empty()) throw InternalInconsistency(command + ": failed check without residuals");
  Report r;
  r.command = std::move(command);
  r.verdict = check.ok ? Verdict::pass : Verdict::fail;
  r.residuals = check.residuals;
  return r;
}

json report_json(const Report& r, bool timing) {
  json out = {{"command", r.command}, {"verdict", verdict_name(r.verdict)}};
  json residuals = json::array();
  for (const auto& res : r.residuals) residuals.push_back({{"name", res.name}, {"value", res.value}});
  out["residuals"] = residuals;
  if (!r.message.empty()) out["message"] = r.message;
  if (!r.data.is_null()) out["data"] = r.data;
  if (timing) out["seconds"] = std::stod(format_seconds(r.seconds));
  return out;
}

std::string report_text(const Report& r, bool timing) {
  std::ostringstream os;
  os << r.command << ": " << verdict_name(r.verdict) << "\n";
  if (!r.message.empty()) os << "  " << r.message << "\n";
  for (const auto& res : r.residuals) os << "  " << res.name << " = " << res.value << "\n";
  if (!r.data.is_null()) {
    std::istringstream lines(r.data.dump(2));
    for (std::string line; std::getline(lines, line);) os << "  " << line << "\n";
  }
  if (timing) os << "  time: " << format_seconds(r.seconds) << " s\n";
  return os.str();
}

const std::vector<CommandInfo>& commands() {
  static const std::vector<CommandInfo> table = build_commands();
  return table;
}

Report guarded(const std::string& command, const std::function<Report()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  try {
    r = fn();
  } catch (const PreconditionFailure& e) {
    r = Report{};
    r.verdict = Verdict::fail;
    r.message = e.what();
    r.residuals = e.residuals();
    if (r.residuals.empty()) {
      r.verdict = Verdict::error;
      r.internal = true;
      r.message = std::string("refusal without residuals: ") + e.what();
    }
  } catch (const InputError& e) {
    r = Report{};
    r.verdict = Verdict::error;
    r.message = e.what();
  } catch (const InternalInconsistency& e) {
    r = Report{};
    r.verdict = Verdict::error;
    r.internal = true;
    r.message = e.what();
  }
  r.command = command;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace pncalc
