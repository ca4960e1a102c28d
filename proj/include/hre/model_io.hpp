#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hre/error.hpp"
#include "hre/hierarchy.hpp"
#include "hre/pc_matrix.hpp"
#include "hre/prioritization.hpp"

// Decision-model documents (JSON):
//
//   {
//     "alternatives": ["a1", "a2", ...],
//     "criteria": [
//       { "id": "pr", "method": "hre-additive", "direction": "benefit",
//         "weight": 0.5, "known": {"a5": 20}, "matrix": [[1, "2/3", ...], ...] },
//       { "id": "st", "weight": 0.1,
//         "subcriteria": [ { "id": "pd", "weight": "1/3", "matrix": ... }, ... ] }
//     ],
//     "criteria_matrix": [[...]],     // optional, exclusive with root weights
//     "criteria_method": "evm"        // optional
//   }
//
// Numbers may be written as JSON numbers or as strings holding a decimal or a
// fraction "p/q". Matrix cells comparing two known alternatives may be null;
// they are filled with the ratio of the known values.

namespace hre {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

/// Matrix as read from a document: null cells are holes.
using HoledGrid = std::vector<std::vector<std::optional<double>>>;

struct Warning {
  std::string path;
  std::string message;
};

enum class ReportFormat { Text, Json };

namespace io_detail {

inline std::string idx(std::size_t i) { return "[" + std::to_string(i) + "]"; }

inline std::optional<double> parse_decimal(std::string_view s) {
  std::string buf(s);
  if (buf.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  while (end && *end == ' ') ++end;
  if (end == buf.c_str() || *end != '\0') return std::nullopt;
  return v;
}

/// A JSON number, or a string holding a decimal or "p/q".
inline double parse_number(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
      if (auto v = parse_decimal(s)) return *v;
    } else {
      auto num = parse_decimal(s.substr(0, slash));
      auto den = parse_decimal(s.substr(slash + 1));
      if (num && den) {
        if (*den == 0) throw Error(ErrorKind::SchemaError, "zero denominator in \"" + s + "\"", path);
        return *num / *den;
      }
    }
    throw Error(ErrorKind::SchemaError, "\"" + s + "\" is not a number or fraction", path);
  }
  throw Error(ErrorKind::SchemaError, "expected a number", path);
}

inline const Json& require(const Json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(ErrorKind::SchemaError, std::string("missing key \"") + key + "\"", path);
  return *it;
}

inline std::string require_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw Error(ErrorKind::SchemaError, "expected a string", path);
  return j.get<std::string>();
}

inline void reject_unknown_keys(const Json& obj, std::initializer_list<std::string_view> allowed,
                                const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw Error(ErrorKind::SchemaError, "unexpected key \"" + key + "\"", path.empty() ? key : path + "." + key);
  }
}

inline HoledGrid read_grid(const Json& j, std::size_t n, const std::string& path) {
  if (!j.is_array()) throw Error(ErrorKind::SchemaError, "matrix must be an array of rows", path);
  if (j.size() != n)
    throw Error(ErrorKind::DimensionMismatch,
                "matrix has " + std::to_string(j.size()) + " rows, expected " + std::to_string(n), path);
  HoledGrid grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = j[i];
    const std::string row_path = path + idx(i);
    if (!row.is_array()) throw Error(ErrorKind::SchemaError, "matrix row must be an array", row_path);
    if (row.size() != n)
      throw Error(ErrorKind::DimensionMismatch,
                  "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n), row_path);
    grid[i].resize(n);
    for (std::size_t k = 0; k < n; ++k)
      if (!row[k].is_null()) grid[i][k] = parse_number(row[k], row_path + idx(k));
  }
  return grid;
}

inline PCMatrix to_pc_matrix(const HoledGrid& grid, const std::string& path) {
  std::vector<std::vector<double>> rows(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t k = 0; k < grid[i].size(); ++k) {
      if (!grid[i][k]) throw Error(ErrorKind::HoleAtUnknownPair, "missing comparison", path + idx(i) + idx(k));
      rows[i].push_back(*grid[i][k]);
    }
  try {
    return PCMatrix(rows);
  } catch (const Error& e) {
    throw e.within(path);
  }
}

}  // namespace io_detail

/// Fills known-known cells with w_K(a_i) / w_K(a_j). A supplied value that
/// deviates from that ratio by more than 1e-6 relative is rejected; holes
/// anywhere else are rejected.
inline PCMatrix autofill_known_ratios(const HoledGrid& grid, const std::vector<std::string>& labels,
                                      const std::map<std::string, double>& known, const std::string& path = "matrix") {
  const std::size_t n = labels.size();
  if (grid.size() != n) throw Error(ErrorKind::DimensionMismatch, "matrix order differs from alternatives", path);
  std::vector<std::optional<double>> value(n);
  for (std::size_t i = 0; i < n; ++i)
    if (auto it = known.find(labels[i]); it != known.end()) value[i] = it->second;

  HoledGrid filled = grid;
  for (std::size_t i = 0; i < n; ++i) {
    if (filled[i].size() != n) throw Error(ErrorKind::DimensionMismatch, "row length differs", path + io_detail::idx(i));
    for (std::size_t j = 0; j < n; ++j) {
      const std::string cell = path + io_detail::idx(i) + io_detail::idx(j);
      if (!(value[i] && value[j])) {
        if (!filled[i][j]) throw Error(ErrorKind::HoleAtUnknownPair, "only known-known comparisons may be omitted", cell);
        continue;
      }
      const double ratio = *value[i] / *value[j];
      if (filled[i][j] && std::abs(*filled[i][j] - ratio) > 1e-6 * ratio)
        throw Error(ErrorKind::KnownRatioConflict,
                    "supplied " + std::to_string(*filled[i][j]) + " but known values give " + std::to_string(ratio), cell);
      filled[i][j] = ratio;
    }
  }
  return io_detail::to_pc_matrix(filled, path);
}

namespace io_detail {

inline CriterionNode read_criterion(const Json& j, const std::vector<std::string>& alternatives,
                                    const std::string& path) {
  if (!j.is_object()) throw Error(ErrorKind::SchemaError, "criterion must be an object", path);
  reject_unknown_keys(j, {"id", "method", "direction", "weight", "known", "matrix", "subcriteria"}, path);

  CriterionNode node;
  node.id = require_string(require(j, "id", path), path + ".id");
  if (auto it = j.find("weight"); it != j.end()) node.weight = parse_number(*it, path + ".weight");

  if (auto it = j.find("direction"); it != j.end()) {
    const auto d = parse_direction(require_string(*it, path + ".direction"));
    if (!d) throw Error(ErrorKind::SchemaError, "direction must be benefit or cost", path + ".direction");
    node.direction = *d;
  }

  if (auto it = j.find("known"); it != j.end()) {
    if (!it->is_object()) throw Error(ErrorKind::SchemaError, "known must map labels to values", path + ".known");
    for (const auto& [label, v] : it->items()) {
      const std::string kpath = path + ".known." + label;
      if (std::find(alternatives.begin(), alternatives.end(), label) == alternatives.end())
        throw Error(ErrorKind::UnknownLabel, "\"" + label + "\" is not an alternative", kpath);
      const double value = parse_number(v, kpath);
      if (!std::isfinite(value) || !(value > 0))
        throw Error(ErrorKind::SchemaError, "known value must be positive", kpath);
      node.known.emplace(label, value);
    }
  }

  node.method = node.known.empty() ? Method::Evm : Method::HreAdditive;
  if (auto it = j.find("method"); it != j.end()) {
    const auto m = parse_method(require_string(*it, path + ".method"));
    if (!m) throw Error(ErrorKind::SchemaError, "method must be hre-additive, hre-geometric, evm or gmm", path + ".method");
    node.method = *m;
  }

  const bool has_matrix = j.contains("matrix");
  const bool has_sub = j.contains("subcriteria");
  if (has_matrix == has_sub)
    throw Error(ErrorKind::SchemaError, "criterion needs exactly one of \"matrix\" or \"subcriteria\"", path);

  if (has_matrix) {
    const std::string mpath = path + ".matrix";
    const HoledGrid grid = read_grid(j["matrix"], alternatives.size(), mpath);
    if (!node.known.empty() && !is_hre(node.method))
      throw Error(ErrorKind::KnownValuesWithEigenMethod,
                  "known values require an HRE method, got " + std::string(to_string(node.method)), path + ".method");
    node.matrix = autofill_known_ratios(grid, alternatives, node.known, mpath);
  } else {
    const Json& subs = j["subcriteria"];
    if (!subs.is_array() || subs.empty())
      throw Error(ErrorKind::SchemaError, "subcriteria must be a non-empty array", path + ".subcriteria");
    for (std::size_t c = 0; c < subs.size(); ++c) {
      const std::string cpath = path + ".subcriteria" + idx(c);
      node.subcriteria.push_back(read_criterion(subs[c], alternatives, cpath));
      if (!node.subcriteria.back().weight)
        throw Error(ErrorKind::SchemaError, "sub-criterion needs a local weight", cpath + ".weight");
    }
  }
  return node;
}

}  // namespace io_detail

inline DecisionModel parse_model(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::SyntaxError, e.what(), "byte " + std::to_string(e.byte));
  }
  if (!doc.is_object()) throw Error(ErrorKind::SchemaError, "document must be an object", "$");
  io_detail::reject_unknown_keys(doc, {"alternatives", "criteria", "criteria_matrix", "criteria_method"}, "");

  DecisionModel model;
  const Json& alts = io_detail::require(doc, "alternatives", "$");
  if (!alts.is_array() || alts.empty())
    throw Error(ErrorKind::SchemaError, "alternatives must be a non-empty array", "alternatives");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < alts.size(); ++i) {
    const std::string path = "alternatives" + io_detail::idx(i);
    model.alternatives.push_back(io_detail::require_string(alts[i], path));
    if (!seen.insert(model.alternatives.back()).second)
      throw Error(ErrorKind::SchemaError, "duplicate alternative \"" + model.alternatives.back() + "\"", path);
  }

  const Json& crit = io_detail::require(doc, "criteria", "$");
  if (!crit.is_array() || crit.empty()) throw Error(ErrorKind::SchemaError, "criteria must be a non-empty array", "criteria");
  for (std::size_t t = 0; t < crit.size(); ++t)
    model.criteria.push_back(io_detail::read_criterion(crit[t], model.alternatives, "criteria" + io_detail::idx(t)));

  if (auto it = doc.find("criteria_method"); it != doc.end()) {
    const auto m = parse_method(io_detail::require_string(*it, "criteria_method"));
    if (!m || is_hre(*m)) throw Error(ErrorKind::SchemaError, "criteria_method must be evm or gmm", "criteria_method");
    model.criteria_method = *m;
  }

  std::size_t weighted = 0;
  for (const auto& c : model.criteria) weighted += c.weight ? 1 : 0;
  if (auto it = doc.find("criteria_matrix"); it != doc.end()) {
    if (weighted != 0) {
      for (std::size_t t = 0; t < model.criteria.size(); ++t)
        if (model.criteria[t].weight)
          throw Error(ErrorKind::ConflictingWeightSpec, "explicit weight alongside criteria_matrix",
                      "criteria" + io_detail::idx(t) + ".weight");
    }
    const auto grid = io_detail::read_grid(*it, model.criteria.size(), "criteria_matrix");
    model.criteria_matrix = io_detail::to_pc_matrix(grid, "criteria_matrix");
  } else if (weighted != model.criteria.size()) {
    for (std::size_t t = 0; t < model.criteria.size(); ++t)
      if (!model.criteria[t].weight)
        throw Error(ErrorKind::ConflictingWeightSpec, "criterion has no weight and there is no criteria_matrix",
                    "criteria" + io_detail::idx(t) + ".weight");
  }

  validate_model(model);
  return model;
}

/// Non-fatal findings: every comparison matrix that is not reciprocal.
inline std::vector<Warning> collect_warnings(const DecisionModel& model) {
  std::vector<Warning> out;
  auto check = [&](const PCMatrix& c, const std::string& path) {
    for (auto [i, j] : reciprocity_violations(c))
      out.push_back({path + io_detail::idx(i) + io_detail::idx(j),
                     "not reciprocal: c_ij * c_ji = " + std::to_string(c(i, j) * c(j, i))});
  };
  auto walk = [&](auto&& self, const CriterionNode& node, const std::string& path) -> void {
    if (node.matrix) check(*node.matrix, path + ".matrix");
    for (std::size_t c = 0; c < node.subcriteria.size(); ++c)
      self(self, node.subcriteria[c], path + ".subcriteria" + io_detail::idx(c));
  };
  for (std::size_t t = 0; t < model.criteria.size(); ++t) walk(walk, model.criteria[t], "criteria" + io_detail::idx(t));
  if (model.criteria_matrix) check(*model.criteria_matrix, "criteria_matrix");
  return out;
}

namespace io_detail {

inline OrderedJson matrix_json(const PCMatrix& c) {
  OrderedJson rows = OrderedJson::array();
  for (const auto& r : c.to_rows()) rows.push_back(r);
  return rows;
}

inline OrderedJson criterion_json(const CriterionNode& node) {
  OrderedJson j;
  j["id"] = node.id;
  if (node.is_leaf()) j["method"] = std::string(to_string(node.method));
  j["direction"] = std::string(to_string(node.direction));
  if (node.weight) j["weight"] = *node.weight;
  if (!node.known.empty()) {
    OrderedJson known = OrderedJson::object();
    for (const auto& [k, v] : node.known) known[k] = v;
    j["known"] = known;
  }
  if (node.matrix) j["matrix"] = matrix_json(*node.matrix);
  if (!node.subcriteria.empty()) {
    OrderedJson subs = OrderedJson::array();
    for (const auto& c : node.subcriteria) subs.push_back(criterion_json(c));
    j["subcriteria"] = subs;
  }
  return j;
}

}  // namespace io_detail

inline std::string serialize_model(const DecisionModel& model) {
  OrderedJson doc;
  doc["alternatives"] = model.alternatives;
  OrderedJson crit = OrderedJson::array();
  for (const auto& c : model.criteria) crit.push_back(io_detail::criterion_json(c));
  doc["criteria"] = crit;
  if (model.criteria_matrix) {
    doc["criteria_matrix"] = io_detail::matrix_json(*model.criteria_matrix);
    doc["criteria_method"] = std::string(to_string(model.criteria_method));
  }
  return doc.dump(2);
}

// ---------------------------------------------------------------------------
// Reports

namespace io_detail {

inline OrderedJson result_json(const CriterionResult& r) {
  OrderedJson j;
  j["id"] = r.id;
  j["method"] = r.children.empty() ? std::string(to_string(r.method)) : std::string("subcriteria");
  j["direction"] = std::string(to_string(r.direction));
  if (r.local_weight) j["weight"] = *r.local_weight;
  j["raw"] = r.raw.values();
  j["normalized"] = r.normalized.values();
  OrderedJson d = OrderedJson::object();
  if (r.diagnostics.ci) d["ci"] = *r.diagnostics.ci;
  if (r.diagnostics.koczkodaj) d["koczkodaj"] = *r.diagnostics.koczkodaj;
  if (r.diagnostics.reciprocal) d["reciprocal"] = *r.diagnostics.reciprocal;
  d["admissible"] = r.diagnostics.admissible;
  j["diagnostics"] = d;
  if (!r.children.empty()) {
    OrderedJson subs = OrderedJson::array();
    for (const auto& c : r.children) subs.push_back(result_json(c));
    j["subcriteria"] = subs;
  }
  return j;
}

inline CriterionResult result_from_json(const Json& j, const std::vector<std::string>& labels) {
  CriterionResult r;
  r.id = j.at("id").get<std::string>();
  const std::string method = j.at("method").get<std::string>();
  if (auto m = parse_method(method)) r.method = *m;
  r.direction = parse_direction(j.at("direction").get<std::string>()).value_or(Direction::Benefit);
  if (j.contains("weight")) r.local_weight = j["weight"].get<double>();
  r.raw = PriorityVector(labels, j.at("raw").get<std::vector<double>>());
  r.normalized = PriorityVector(labels, j.at("normalized").get<std::vector<double>>(), true);
  const Json& d = j.at("diagnostics");
  if (d.contains("ci")) r.diagnostics.ci = d["ci"].get<double>();
  if (d.contains("koczkodaj")) r.diagnostics.koczkodaj = d["koczkodaj"].get<double>();
  if (d.contains("reciprocal")) r.diagnostics.reciprocal = d["reciprocal"].get<bool>();
  r.diagnostics.admissible = d.value("admissible", true);
  if (j.contains("subcriteria"))
    for (const auto& c : j["subcriteria"]) r.children.push_back(result_from_json(c, labels));
  return r;
}

inline std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

inline std::string pad(std::string s, std::size_t width, bool left = true) {
  if (s.size() >= width) return s;
  return left ? s + std::string(width - s.size(), ' ') : std::string(width - s.size(), ' ') + s;
}

inline void render_result(std::string& out, const CriterionResult& r, const std::vector<std::string>& alternatives,
                          std::size_t label_width, const std::string& indent) {
  out += indent + "criterion " + r.id + " (";
  out += r.children.empty() ? std::string(to_string(r.method)) : std::string("subcriteria");
  out += ", " + std::string(to_string(r.direction));
  if (r.local_weight) out += ", weight " + fixed4(*r.local_weight);
  out += ")\n";
  out += indent + "  " + pad("alternative", label_width) + pad("raw", 14, false) + pad("normalized", 12, false) + "\n";
  for (std::size_t i = 0; i < alternatives.size(); ++i)
    out += indent + "  " + pad(alternatives[i], label_width) + pad(fixed4(r.raw[i]), 14, false) +
           pad(fixed4(r.normalized[i]), 12, false) + "\n";
  const auto& d = r.diagnostics;
  if (d.ci || d.koczkodaj || d.reciprocal) {
    out += indent + " ";
    if (d.ci) out += " CI " + fixed4(*d.ci);
    if (d.koczkodaj) out += "  Koczkodaj " + fixed4(*d.koczkodaj);
    if (d.reciprocal) out += std::string("  reciprocal ") + (*d.reciprocal ? "yes" : "no");
    out += "\n";
  }
  for (const auto& c : r.children) render_result(out, c, alternatives, label_width, indent + "    ");
}

}  // namespace io_detail

inline std::string report_to_json(const RankingReport& report) {
  OrderedJson doc;
  doc["alternatives"] = report.alternatives;
  OrderedJson cw = OrderedJson::array();
  for (std::size_t t = 0; t < report.criteria_weights.size(); ++t)
    cw.push_back({{"id", report.criteria_weights.labels()[t]}, {"weight", report.criteria_weights[t]}});
  doc["criteria_weights"] = cw;
  OrderedJson crit = OrderedJson::array();
  for (const auto& r : report.criteria) crit.push_back(io_detail::result_json(r));
  doc["criteria"] = crit;
  doc["final"] = report.final.values();
  OrderedJson ranking = OrderedJson::array();
  for (std::size_t i : report.final.ranking())
    ranking.push_back({{"alternative", report.alternatives[i]}, {"priority", report.final[i]}});
  doc["ranking"] = ranking;
  return doc.dump(2);
}

inline RankingReport parse_report(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::SyntaxError, e.what(), "byte " + std::to_string(e.byte));
  }
  try {
    RankingReport r;
    r.alternatives = doc.at("alternatives").get<std::vector<std::string>>();
    std::vector<std::string> ids;
    std::vector<double> w;
    for (const auto& e : doc.at("criteria_weights")) {
      ids.push_back(e.at("id").get<std::string>());
      w.push_back(e.at("weight").get<double>());
    }
    r.criteria_weights = PriorityVector(std::move(ids), std::move(w), true);
    for (const auto& c : doc.at("criteria")) r.criteria.push_back(io_detail::result_from_json(c, r.alternatives));
    r.final = PriorityVector(r.alternatives, doc.at("final").get<std::vector<double>>(), true);
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::SchemaError, e.what(), "report");
  }
}

inline std::string render_report(const RankingReport& report, ReportFormat format = ReportFormat::Text) {
  if (format == ReportFormat::Json) return report_to_json(report) + "\n";

  std::size_t width = std::string("alternative").size() + 2;
  for (const auto& a : report.alternatives) width = std::max(width, a.size() + 2);

  std::string out;
  out += "criteria weights\n";
  for (std::size_t t = 0; t < report.criteria_weights.size(); ++t)
    out += "  " + io_detail::pad(report.criteria_weights.labels()[t], width) +
           io_detail::pad(io_detail::fixed4(report.criteria_weights[t]), 12, false) + "\n";
  out += "\n";
  for (const auto& r : report.criteria) {
    io_detail::render_result(out, r, report.alternatives, width, "");
    out += "\n";
  }
  out += "final ranking\n";
  std::size_t place = 1;
  for (std::size_t i : report.final.ranking()) {
    out += io_detail::pad(std::to_string(place++) + ".", 5, false) + " " + io_detail::pad(report.alternatives[i], width) +
           io_detail::pad(io_detail::fixed4(report.final[i]), 10, false) + "\n";
  }
  return out;
}

}  // namespace hre
