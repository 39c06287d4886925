#include "pncalc/document.hpp"

#include <charconv>
#include <set>

namespace pncalc {

using nlohmann::json;

namespace {

const std::set<std::string> kBlocks{"chart",   "bivector",      "tensor11", "form",          "forms",
                                    "multivector", "algebroid", "algebroid_pair", "section", "jacobi",
                                    "pair_groupoid", "submanifold", "holomorphic"};

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where, std::string("missing \"") + key + "\"");
  return j.at(key);
}

std::string text_of(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  bad(where, "expected a polynomial string");
}

Polynomial poly(const json& j, const Chart& c, const std::string& where) {
  try {
    return c.parse(text_of(j, where));
  } catch (const ParseError& e) {
    bad(where, e.what());
  }
}

Rational rational(const json& j, const std::string& where) {
  try {
    return Rational::parse(text_of(j, where));
  } catch (const std::exception& e) {
    bad(where, "expected a rational number");
  }
}

IndexTuple parse_key(const std::string& key, std::size_t dim, int degree, const std::string& where) {
  IndexTuple idx;
  if (!key.empty()) {
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = key.find(',', start);
      const std::string part = key.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      int v = 0;
      const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
      if (ec != std::errc() || ptr != part.data() + part.size()) bad(where, "bad index tuple \"" + key + "\"");
      if (v < 1 || static_cast<std::size_t>(v) > dim) bad(where, "index out of range in \"" + key + "\"");
      idx.push_back(v - 1);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  if (static_cast<int>(idx.size()) != degree) bad(where, "index tuple \"" + key + "\" does not match the degree");
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i - 1] >= idx[i]) bad(where, "index tuple \"" + key + "\" is not strictly increasing");
  return idx;
}

AntiTensor components(const json& j, const Chart& c, std::size_t dim, int degree, const std::string& where) {
  if (!j.is_object()) bad(where, "components must be an object");
  AntiTensor t(c.ring(), dim, degree);
  for (const auto& [key, value] : j.items()) t.add(parse_key(key, dim, degree, where), poly(value, c, where + "[" + key + "]"));
  return t;
}

int degree_of(const json& j, const std::string& where) {
  const json& d = member(j, "degree", where);
  if (!d.is_number_integer() || d.get<int>() < 0) bad(where, "degree must be a nonnegative integer");
  return d.get<int>();
}

AntiTensor graded(const json& j, const Chart& c, std::size_t dim, const std::string& where) {
  return components(member(j, "components", where), c, dim, degree_of(j, where), where);
}

MultiVector bivector(const json& j, const Chart& c, const std::string& where) {
  return MultiVector(c, components(j, c, c.dim(), 2, where));
}

MultiVector vector_field(const json& j, const Chart& c, const std::string& where) {
  if (!j.is_array() || j.size() != c.dim()) bad(where, "expected one component per coordinate");
  std::vector<Polynomial> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(poly(j[i], c, where));
  return MultiVector::linear(c, v);
}

PolyMatrix matrix(const json& j, const Chart& c, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array() || j.size() != rows) bad(where, "expected " + std::to_string(rows) + " rows");
  PolyMatrix m(c.ring(), rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) bad(where, "expected " + std::to_string(cols) + " columns");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = poly(j[i][k], c, where);
  }
  return m;
}

TensorOneOne tensor(const json& j, const Chart& c, const std::string& where) {
  return TensorOneOne(c, matrix(j, c, c.dim(), c.dim(), where));
}

Chart chart(const json& j) {
  const std::string where = "chart";
  const json& dim = member(j, "dim", where);
  if (!dim.is_number_integer() || dim.get<int>() < 0) bad(where, "dim must be a nonnegative integer");
  const std::size_t n = dim.get<std::size_t>();
  if (!j.contains("coords")) return Chart::standard(n);
  const json& names = j.at("coords");
  if (!names.is_array() || names.size() != n) bad(where, "coords must list dim names");
  std::vector<std::string> out;
  for (const auto& name : names) {
    if (!name.is_string()) bad(where, "coordinate names must be strings");
    out.push_back(name.get<std::string>());
  }
  return Chart(std::move(out));
}

AlgebroidData algebroid(const json& j, const Chart& c, const std::string& where) {
  const json& rank = member(j, "rank", where);
  if (!rank.is_number_integer() || rank.get<int>() < 1) bad(where, "rank must be a positive integer");
  const std::size_t r = rank.get<std::size_t>();
  AlgebroidData a(c, r);
  if (j.contains("names")) {
    const json& names = j.at("names");
    if (!names.is_array() || names.size() != r) bad(where, "names must list rank entries");
    std::vector<std::string> out;
    for (const auto& n : names) out.push_back(text_of(n, where));
    a.set_basis_names(std::move(out));
  }
  if (j.contains("anchor")) {
    const PolyMatrix m = matrix(j.at("anchor"), c, c.dim(), r, where + ".anchor");
    for (std::size_t alpha = 0; alpha < c.dim(); ++alpha)
      for (std::size_t i = 0; i < r; ++i) a.set_anchor(alpha, i, m(alpha, i));
  }
  if (j.contains("brackets")) {
    const json& b = j.at("brackets");
    if (!b.is_object()) bad(where, "brackets must be an object");
    for (const auto& [key, value] : b.items()) {
      const IndexTuple idx = parse_key(key, r, 2, where + ".brackets");
      if (!value.is_array() || value.size() != r) bad(where, "bracket \"" + key + "\" needs rank coefficients");
      std::vector<Polynomial> coeffs;
      for (const auto& v : value) coeffs.push_back(poly(v, c, where + ".brackets[" + key + "]"));
      a.set_bracket(idx[0], idx[1], coeffs);
    }
  }
  for (const auto& [key, value] : j.items())
    if (key != "rank" && key != "names" && key != "anchor" && key != "brackets") bad(where, "unknown field \"" + key + "\"");
  return a;
}

JacobiPair jacobi(const json& j, const Chart& c, const std::string& where) {
  return {bivector(member(j, "pi", where), c, where + ".pi"), vector_field(member(j, "E", where), c, where + ".E")};
}

std::vector<AffineConstraint> constraints(const json& j, const Chart& c) {
  const std::string where = "submanifold";
  const json& list = member(j, "constraints", where);
  if (!list.is_array()) bad(where, "constraints must be an array");
  std::vector<AffineConstraint> out;
  for (const auto& eq : list) {
    const json& coeffs = member(eq, "coeffs", where);
    if (!coeffs.is_array() || coeffs.size() != c.dim()) bad(where, "each constraint needs dim coefficients");
    AffineConstraint a;
    for (const auto& v : coeffs) a.coeffs.push_back(rational(v, where));
    a.rhs = eq.contains("rhs") ? rational(eq.at("rhs"), where) : Rational(0);
    out.push_back(std::move(a));
  }
  AffineSubmanifold(c, out);  // validates rank and consistency
  return out;
}

json string_or_zero(const Polynomial& p) { return p.to_string(); }

json vector_json(const MultiVector& v) {
  json out = json::array();
  for (const auto& p : v.coefficients()) out.push_back(string_or_zero(p));
  return out;
}

}  // namespace

json components_json(const AntiTensor& t) {
  json out = json::object();
  for (const auto& [idx, coef] : t.components()) out[index_key(idx)] = coef.to_string();
  return out;
}

json field_json(const AntiTensor& t) { return {{"degree", t.degree()}, {"components", components_json(t)}}; }

json matrix_json(const PolyMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).to_string());
    out.push_back(std::move(row));
  }
  return out;
}

json algebroid_json(const AlgebroidData& a) {
  json brackets = json::object();
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t k = i + 1; k < a.rank(); ++k) {
      const auto b = a.basis_bracket(i, k);
      if (b.is_zero()) continue;
      json coeffs = json::array();
      for (const auto& p : b.as_linear()) coeffs.push_back(p.to_string());
      brackets[index_key({static_cast<int>(i), static_cast<int>(k)})] = std::move(coeffs);
    }
  return {{"rank", a.rank()}, {"names", a.basis_names()}, {"anchor", matrix_json(a.anchor_matrix())}, {"brackets", brackets}};
}

json chart_json(const Chart& c) { return {{"dim", c.dim()}, {"coords", c.coords()}}; }

Document parse_document(const json& j) {
  if (!j.is_object()) throw InputError("document must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!kBlocks.contains(key)) throw InputError("unknown block \"" + key + "\"");
  try {
    Document d;
    d.chart = chart(member(j, "chart", "document"));
    const Chart& c = d.chart;
    if (j.contains("bivector")) d.bivector = bivector(j.at("bivector"), c, "bivector");
    if (j.contains("tensor11")) d.tensor11 = tensor(j.at("tensor11"), c, "tensor11");
    if (j.contains("form")) d.form = DiffForm(c, graded(j.at("form"), c, c.dim(), "form"));
    if (j.contains("forms")) {
      if (!j.at("forms").is_array()) bad("forms", "expected an array");
      d.forms.emplace();
      for (const auto& f : j.at("forms")) d.forms->emplace_back(c, graded(f, c, c.dim(), "forms"));
    }
    if (j.contains("multivector")) d.multivector = MultiVector(c, graded(j.at("multivector"), c, c.dim(), "multivector"));
    if (j.contains("algebroid")) d.algebroid = algebroid(j.at("algebroid"), c, "algebroid");
    if (j.contains("algebroid_pair")) {
      const json& p = j.at("algebroid_pair");
      if (!p.is_array() || p.size() != 2) bad("algebroid_pair", "expected two algebroids");
      d.algebroid_pair = {algebroid(p[0], c, "algebroid_pair[0]"), algebroid(p[1], c, "algebroid_pair[1]")};
    }
    if (j.contains("section")) {
      if (!d.algebroid) bad("section", "needs an \"algebroid\" block");
      d.section = graded(j.at("section"), c, d.algebroid->rank(), "section");
    }
    if (j.contains("jacobi")) {
      const json& p = j.at("jacobi");
      d.jacobi.emplace();
      if (p.is_array()) {
        if (p.empty() || p.size() > 2) bad("jacobi", "expected one or two pairs");
        for (std::size_t i = 0; i < p.size(); ++i) d.jacobi->push_back(jacobi(p[i], c, "jacobi[" + std::to_string(i) + "]"));
      } else {
        d.jacobi->push_back(jacobi(p, c, "jacobi"));
      }
    }
    if (j.contains("pair_groupoid")) {
      const json& p = j.at("pair_groupoid");
      const PairGroupoid g(c);
      GroupoidData data;
      if (p.contains("bivector")) data.bivector = bivector(p.at("bivector"), g.total(), "pair_groupoid.bivector");
      if (p.contains("tensor11")) data.tensor11 = tensor(p.at("tensor11"), g.total(), "pair_groupoid.tensor11");
      d.pair_groupoid = std::move(data);
    }
    if (j.contains("submanifold")) d.submanifold = constraints(j.at("submanifold"), c);
    if (j.contains("holomorphic")) {
      const json& h = j.at("holomorphic");
      d.holomorphic = HolomorphicData{bivector(member(h, "real", "holomorphic"), c, "holomorphic.real"),
                                      bivector(member(h, "imag", "holomorphic"), c, "holomorphic.imag"),
                                      tensor(member(h, "J", "holomorphic"), c, "holomorphic.J")};
    }
    return d;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed document: ") + e.what());
  }
}

Document parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  return parse_document(j);
}

json to_json(const Document& d) {
  json out;
  out["chart"] = chart_json(d.chart);
  if (d.bivector) out["bivector"] = components_json(d.bivector->tensor());
  if (d.tensor11) out["tensor11"] = matrix_json(d.tensor11->matrix());
  if (d.form) out["form"] = field_json(d.form->tensor());
  if (d.forms) {
    out["forms"] = json::array();
    for (const auto& f : *d.forms) out["forms"].push_back(field_json(f.tensor()));
  }
  if (d.multivector) out["multivector"] = field_json(d.multivector->tensor());
  if (d.algebroid) out["algebroid"] = algebroid_json(*d.algebroid);
  if (d.algebroid_pair) {
    out["algebroid_pair"] = json::array();
    for (const auto& a : *d.algebroid_pair) out["algebroid_pair"].push_back(algebroid_json(a));
  }
  if (d.section) out["section"] = field_json(*d.section);
  if (d.jacobi) {
    json list = json::array();
    for (const auto& p : *d.jacobi) list.push_back({{"pi", components_json(p.pi.tensor())}, {"E", vector_json(p.e)}});
    out["jacobi"] = list.size() == 1 ? list[0] : list;
  }
  if (d.pair_groupoid) {
    json g = json::object();
    if (d.pair_groupoid->bivector) g["bivector"] = components_json(d.pair_groupoid->bivector->tensor());
    if (d.pair_groupoid->tensor11) g["tensor11"] = matrix_json(d.pair_groupoid->tensor11->matrix());
    out["pair_groupoid"] = g;
  }
  if (d.submanifold) {
    json list = json::array();
    for (const auto& c : *d.submanifold) {
      json coeffs = json::array();
      for (const auto& r : c.coeffs) coeffs.push_back(r.to_string());
      list.push_back({{"coeffs", coeffs}, {"rhs", c.rhs.to_string()}});
    }
    out["submanifold"] = {{"constraints", list}};
  }
  if (d.holomorphic)
    out["holomorphic"] = {{"real", components_json(d.holomorphic->real.tensor())},
                          {"imag", components_json(d.holomorphic->imag.tensor())},
                          {"J", matrix_json(d.holomorphic->j.matrix())}};
  return out;
}

}  // namespace pncalc
