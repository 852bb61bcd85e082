#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vgrp/error.hpp"
#include "vgrp/group.hpp"
#include "vgrp/quantale.hpp"
#include "vgrp/report.hpp"
#include "vgrp/vgroup.hpp"

namespace vgrp {

using Json = nlohmann::json;

/// A morphism declared in a document; the target is another document,
/// resolved relative to the declaring one.
struct MorphismRef {
  std::string name;
  std::string target;
  std::vector<Elem> map;
};

/// One V-group candidate read from a workbench document. The structure has
/// passed shape checks only.
struct WorkbenchDocument {
  QuantalePtr quantale;
  VGroupRef object;
  std::vector<MorphismRef> morphisms;
  std::filesystem::path source;
};

namespace detail {

[[noreturn]] inline void bad_document(const std::string& what) { throw StructuralError("document: " + what); }

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad_document(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline std::size_t index_value(const Json& j, const char* what) {
  if (!j.is_number_unsigned()) bad_document(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

inline Value element_by_label(const Quantale& q, const Json& j) {
  if (!j.is_string()) bad_document("quantale elements are referenced by label");
  auto v = q.find(j.get<std::string>());
  if (!v) bad_document("unknown quantale element \"" + j.get<std::string>() + "\"");
  return *v;
}

inline QuantalePtr parse_quantale(const Json& j) {
  if (j.contains("builtin")) {
    const std::string kind = field(j, "builtin").get<std::string>();
    if (kind == "boolean") return boolean_quantale();
    const auto m = static_cast<unsigned>(index_value(field(j, "m"), "m"));
    if (kind == "lawvere_chain") return lawvere_chain(m);
    if (kind == "ultrametric_chain") return ultrametric_chain(m);
    bad_document("unknown builtin quantale \"" + kind + "\"");
  }
  QuantaleTables t;
  for (const Json& e : field(j, "elements")) {
    if (!e.is_string()) bad_document("quantale element labels must be strings");
    t.labels.push_back(e.get<std::string>());
  }
  const std::size_t n = t.labels.size();
  auto label_index = [&](const Json& e) {
    if (!e.is_string()) bad_document("quantale tables reference elements by label");
    for (std::size_t i = 0; i < n; ++i)
      if (t.labels[i] == e.get<std::string>()) return i;
    bad_document("unknown quantale element \"" + e.get<std::string>() + "\"");
  };
  const Json& leq = field(j, "leq");
  const Json& tensor = field(j, "tensor");
  if (!leq.is_array() || !tensor.is_array() || leq.size() != n || tensor.size() != n) {
    bad_document("quantale tables must be square over the elements");
  }
  t.leq.assign(n, std::vector<bool>(n));
  t.tensor.assign(n, std::vector<std::size_t>(n));
  for (std::size_t u = 0; u < n; ++u) {
    if (!leq[u].is_array() || !tensor[u].is_array() || leq[u].size() != n || tensor[u].size() != n) {
      bad_document("quantale table row is ragged");
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (!leq[u][v].is_boolean()) bad_document("leq entries must be booleans");
      t.leq[u][v] = leq[u][v].get<bool>();
      t.tensor[u][v] = label_index(tensor[u][v]);
    }
  }
  t.unit = label_index(field(j, "unit"));
  return Quantale::make(std::move(t));
}

inline FiniteGroup parse_group(const Json& j) {
  if (j.contains("cyclic")) return cyclic_group(index_value(j.at("cyclic"), "cyclic"));
  const Json& table = field(j, "table");
  if (!table.is_array()) bad_document("group table must be an array");
  std::vector<std::vector<Elem>> t;
  for (const Json& row : table) {
    if (!row.is_array()) bad_document("group table rows must be arrays");
    std::vector<Elem> r;
    for (const Json& e : row) r.push_back(index_value(e, "group table entry"));
    t.push_back(std::move(r));
  }
  if (j.contains("order") && index_value(j.at("order"), "order") != t.size()) {
    bad_document("group order differs from table size");
  }
  const Elem identity = j.contains("identity") ? index_value(j.at("identity"), "identity") : 0;
  return FiniteGroup(std::move(t), identity, j.value("name", std::string{}));
}

inline VRel parse_structure(const Json& j, const FiniteGroup& g, const QuantalePtr& q) {
  const std::size_t n = g.order();
  if (j.is_object()) {
    const Json& delta = field(j, "delta");
    if (!delta.is_array() || delta.size() != n) bad_document("delta must list one element per group element");
    std::vector<Value> d;
    for (const Json& e : delta) d.push_back(element_by_label(*q, e));
    return structure_from_delta(g, q, d).structure();
  }
  if (!j.is_array() || j.size() != n) bad_document("structure must be a square matrix over the carrier");
  VRel a(q, n, n, q->bottom());
  for (std::size_t x = 0; x < n; ++x) {
    if (!j[x].is_array() || j[x].size() != n) bad_document("structure row is ragged");
    for (std::size_t y = 0; y < n; ++y) a.set(x, y, element_by_label(*q, j[x][y]));
  }
  return a;
}

}  // namespace detail

inline WorkbenchDocument parse_document(const Json& j, std::filesystem::path source = {}) {
  if (!j.is_object()) detail::bad_document("top level must be an object");
  WorkbenchDocument doc;
  doc.source = std::move(source);
  doc.quantale = detail::parse_quantale(detail::field(j, "quantale"));
  FiniteGroup g = detail::parse_group(detail::field(j, "group"));
  VRel a = detail::parse_structure(detail::field(j, "structure"), g, doc.quantale);
  doc.object = share(VGroup(std::move(g), std::move(a)));
  if (j.contains("morphisms")) {
    for (const Json& m : j.at("morphisms")) {
      MorphismRef ref{detail::field(m, "name").get<std::string>(), detail::field(m, "target").get<std::string>(), {}};
      for (const Json& e : detail::field(m, "map")) ref.map.push_back(detail::index_value(e, "morphism map entry"));
      doc.morphisms.push_back(std::move(ref));
    }
  }
  return doc;
}

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw StructuralError(path.string() + ": " + e.what());
  }
}

inline WorkbenchDocument load_document(const std::filesystem::path& path) {
  try {
    return parse_document(read_json_file(path), path);
  } catch (const Json::exception& e) {
    throw StructuralError(path.string() + ": " + e.what());
  }
}

/// The named morphism of `doc` as a V-homomorphism candidate, loading its
/// target. The laws are not checked here.
inline VHom resolve_morphism(const WorkbenchDocument& doc, const std::string& name) {
  for (const MorphismRef& m : doc.morphisms) {
    if (m.name != name) continue;
    WorkbenchDocument target = load_document(doc.source.parent_path() / m.target);
    if (!target.quantale->same_as(*doc.quantale)) throw StructuralError("morphism " + name + ": quantale mismatch");
    return VHom(doc.object, target.object, m.map);
  }
  throw StructuralError("no morphism named \"" + name + "\"");
}

// --- emission ---------------------------------------------------------------------

inline Json quantale_to_json(const Quantale& q) {
  if (const auto& b = q.builtin()) {
    Json j{{"builtin", b->kind == BuiltinSpec::Kind::boolean          ? "boolean"
                       : b->kind == BuiltinSpec::Kind::lawvere_chain ? "lawvere_chain"
                                                                     : "ultrametric_chain"}};
    if (b->kind != BuiltinSpec::Kind::boolean) j["m"] = b->m;
    return j;
  }
  const QuantaleTables& t = q.tables();
  Json leq = Json::array();
  Json tensor = Json::array();
  for (std::size_t u = 0; u < t.labels.size(); ++u) {
    Json lr = Json::array();
    Json tr = Json::array();
    for (std::size_t v = 0; v < t.labels.size(); ++v) {
      lr.push_back(static_cast<bool>(t.leq[u][v]));
      tr.push_back(t.labels[t.tensor[u][v]]);
    }
    leq.push_back(std::move(lr));
    tensor.push_back(std::move(tr));
  }
  return {{"elements", t.labels}, {"leq", std::move(leq)}, {"tensor", std::move(tensor)}, {"unit", t.labels[t.unit]}};
}

inline Json group_to_json(const FiniteGroup& g) {
  return {{"identity", g.identity()}, {"name", g.name()}, {"order", g.order()}, {"table", g.table()}};
}

inline Json structure_to_json(const VGroup& g) {
  Json rows = Json::array();
  for (Elem x = 0; x < g.order(); ++x) {
    Json row = Json::array();
    for (Elem y = 0; y < g.order(); ++y) row.push_back(g.q().label(g.a(x, y)));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Group and structure of an object; the quantale is stated once per document.
inline Json object_to_json(const VGroup& g) {
  return {{"group", group_to_json(g.group())}, {"structure", structure_to_json(g)}};
}

inline Json document_to_json(const WorkbenchDocument& doc) {
  Json j = object_to_json(*doc.object);
  j["quantale"] = quantale_to_json(*doc.quantale);
  if (!doc.morphisms.empty()) {
    Json ms = Json::array();
    for (const MorphismRef& m : doc.morphisms) ms.push_back({{"map", m.map}, {"name", m.name}, {"target", m.target}});
    j["morphisms"] = std::move(ms);
  }
  return j;
}

inline Json report_to_json(const Report& r) {
  Json v = Json::array();
  for (const Violation& x : r.violations) {
    Json e{{"law", x.law}, {"witness", x.witness}};
    if (!x.detail.empty()) e["detail"] = x.detail;
    v.push_back(std::move(e));
  }
  return {{"notes", r.notes}, {"ok", r.ok()}, {"violations", std::move(v)}};
}

/// Sorted keys, two-space indent, trailing newline.
inline std::string canonical(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace vgrp
