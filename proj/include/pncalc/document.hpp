#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pncalc/algebroid.hpp"
#include "pncalc/groupoid_desk.hpp"
#include "pncalc/jacobi.hpp"

namespace pncalc {

struct HolomorphicData {
  MultiVector real;
  MultiVector imag;
  TensorOneOne j;
  friend bool operator==(const HolomorphicData&, const HolomorphicData&) = default;
};

/// Tensors on the total chart of the pair groupoid over the document chart.
struct GroupoidData {
  std::optional<MultiVector> bivector;
  std::optional<TensorOneOne> tensor11;
  friend bool operator==(const GroupoidData&, const GroupoidData&) = default;
};

/// Input of every CLI command. All polynomials are strings in the
/// polynomial grammar; antisymmetric components are keyed by strictly
/// increasing 1-based index tuples such as "1,2".
struct Document {
  Chart chart;
  std::optional<MultiVector> bivector;
  std::optional<TensorOneOne> tensor11;
  std::optional<DiffForm> form;
  std::optional<std::vector<DiffForm>> forms;  // arguments of koszul / concomitant
  std::optional<MultiVector> multivector;
  std::optional<AlgebroidData> algebroid;
  std::optional<std::vector<AlgebroidData>> algebroid_pair;
  std::optional<AlgebroidSection> section;  // a form on the algebroid
  std::optional<std::vector<JacobiPair>> jacobi;
  std::optional<GroupoidData> pair_groupoid;
  std::optional<std::vector<AffineConstraint>> submanifold;
  std::optional<HolomorphicData> holomorphic;

  friend bool operator==(const Document&, const Document&) = default;
};

/// Throws InputError on malformed JSON, unknown blocks or bad indices.
Document parse_document(const nlohmann::json& j);
Document parse_document(const std::string& text);
nlohmann::json to_json(const Document& doc);

// Building blocks, shared with the report printer.
nlohmann::json components_json(const AntiTensor& t);
nlohmann::json field_json(const AntiTensor& t);
nlohmann::json matrix_json(const PolyMatrix& m);
nlohmann::json algebroid_json(const AlgebroidData& a);
nlohmann::json chart_json(const Chart& c);

}  // namespace pncalc
