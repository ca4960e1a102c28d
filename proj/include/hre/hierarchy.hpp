#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hre/error.hpp"
#include "hre/hre_solver.hpp"
#include "hre/pc_matrix.hpp"
#include "hre/prioritization.hpp"

namespace hre {

enum class Method { HreAdditive, HreGeometric, Evm, Gmm };
enum class Direction { Benefit, Cost };

inline constexpr std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::HreAdditive: return "hre-additive";
    case Method::HreGeometric: return "hre-geometric";
    case Method::Evm: return "evm";
    case Method::Gmm: return "gmm";
  }
  return "?";
}

inline constexpr std::string_view to_string(Direction d) noexcept {
  return d == Direction::Cost ? "cost" : "benefit";
}

inline std::optional<Method> parse_method(std::string_view s) {
  if (s == "hre-additive") return Method::HreAdditive;
  if (s == "hre-geometric") return Method::HreGeometric;
  if (s == "evm") return Method::Evm;
  if (s == "gmm") return Method::Gmm;
  return std::nullopt;
}

inline std::optional<Direction> parse_direction(std::string_view s) {
  if (s == "benefit") return Direction::Benefit;
  if (s == "cost") return Direction::Cost;
  return std::nullopt;
}

constexpr bool is_hre(Method m) noexcept { return m == Method::HreAdditive || m == Method::HreGeometric; }

/// One criterion. Leaves carry a comparison matrix over the alternatives;
/// inner nodes carry sub-criteria, whose `weight` is their local weight.
struct CriterionNode {
  std::string id;
  Method method = Method::Evm;
  Direction direction = Direction::Benefit;
  std::map<std::string, double> known;
  std::optional<PCMatrix> matrix;
  std::vector<CriterionNode> subcriteria;
  std::optional<double> weight;

  bool is_leaf() const noexcept { return matrix.has_value(); }
};

struct DecisionModel {
  std::vector<std::string> alternatives;
  std::vector<CriterionNode> criteria;
  std::optional<PCMatrix> criteria_matrix;
  Method criteria_method = Method::Evm;
};

struct Diagnostics {
  std::optional<double> ci;
  std::optional<double> koczkodaj;
  std::optional<bool> reciprocal;
  bool admissible = true;
};

struct CriterionResult {
  std::string id;
  Method method = Method::Evm;
  Direction direction = Direction::Benefit;
  std::optional<double> local_weight;
  PriorityVector raw;         // method output before direction handling, in criterion units for HRE
  PriorityVector normalized;  // after cost inversion and L1 normalization
  Diagnostics diagnostics;
  std::vector<CriterionResult> children;
};

struct RankingReport {
  std::vector<std::string> alternatives;
  PriorityVector criteria_weights;  // labelled by criterion id
  std::vector<CriterionResult> criteria;
  PriorityVector final;
};

/// Elementwise reciprocal, then L1 normalization. Turns "smaller is better"
/// quantities into priorities.
inline PriorityVector invert_cost(const PriorityVector& v) {
  std::vector<double> inv(v.values());
  for (std::size_t i = 0; i < inv.size(); ++i) {
    if (!(inv[i] > 0)) throw Error(ErrorKind::NonPositiveEntry, "cannot invert non-positive value of " + v.labels()[i]);
    inv[i] = 1.0 / inv[i];
  }
  return normalize(PriorityVector(v.labels(), std::move(inv)));
}

/// w = sum_t weights[t] * vectors[t].
inline PriorityVector aggregate_vectors(const std::vector<double>& weights, const std::vector<PriorityVector>& vectors) {
  if (weights.size() != vectors.size() || vectors.empty())
    throw Error(ErrorKind::DimensionMismatch, "need one weight per vector");
  const std::size_t n = vectors.front().size();
  std::vector<double> out(n, 0.0);
  for (std::size_t t = 0; t < vectors.size(); ++t) {
    if (vectors[t].size() != n) throw Error(ErrorKind::DimensionMismatch, "vectors differ in length");
    for (std::size_t i = 0; i < n; ++i) out[i] += weights[t] * vectors[t][i];
  }
  return PriorityVector(vectors.front().labels(), std::move(out), true);
}

namespace detail {

inline void validate_node(const CriterionNode& node, const std::vector<std::string>& alternatives,
                          std::set<std::string>& ids, const std::string& path) {
  if (node.id.empty()) throw Error(ErrorKind::InvalidModel, "criterion id is empty", path);
  if (!ids.insert(node.id).second) throw Error(ErrorKind::InvalidModel, "duplicate criterion id " + node.id, path);
  if (node.matrix.has_value() == !node.subcriteria.empty())
    throw Error(ErrorKind::InvalidModel, "criterion " + node.id + " needs exactly one of matrix or subcriteria", path);
  if (node.weight && (!std::isfinite(*node.weight) || *node.weight < 0))
    throw Error(ErrorKind::InvalidModel, "weight must be finite and non-negative", path + ".weight");

  if (node.matrix) {
    if (node.matrix->order() != alternatives.size())
      throw Error(ErrorKind::DimensionMismatch,
                  "matrix order " + std::to_string(node.matrix->order()) + " differs from " +
                      std::to_string(alternatives.size()) + " alternatives",
                  path + ".matrix");
    for (const auto& [label, value] : node.known) {
      if (std::find(alternatives.begin(), alternatives.end(), label) == alternatives.end())
        throw Error(ErrorKind::UnknownLabel, "known label " + label + " is not an alternative", path + ".known." + label);
      if (!std::isfinite(value) || !(value > 0))
        throw Error(ErrorKind::NonPositiveEntry, "known value must be finite and positive", path + ".known." + label);
    }
    if (!node.known.empty() && !is_hre(node.method))
      throw Error(ErrorKind::KnownValuesWithEigenMethod,
                  "criterion " + node.id + " has known values but uses " + std::string(to_string(node.method)), path);
    if (is_hre(node.method) && node.known.empty())
      throw Error(ErrorKind::EmptyReferenceSet, "criterion " + node.id + " uses HRE without known values", path);
  } else {
    if (!node.known.empty())
      throw Error(ErrorKind::InvalidModel, "known values belong on leaf criteria", path + ".known");
    for (std::size_t c = 0; c < node.subcriteria.size(); ++c) {
      const auto& child = node.subcriteria[c];
      const std::string child_path = path + ".subcriteria[" + std::to_string(c) + "]";
      if (!child.weight || !(*child.weight > 0))
        throw Error(ErrorKind::InvalidModel, "sub-criterion local weight must be positive", child_path + ".weight");
      validate_node(child, alternatives, ids, child_path);
    }
  }
}

inline Diagnostics matrix_diagnostics(const PCMatrix& c) {
  Diagnostics d;
  d.ci = saaty_ci(c);
  d.koczkodaj = koczkodaj_index(c);
  d.reciprocal = is_reciprocal(c);
  return d;
}

inline CriterionResult evaluate(const CriterionNode& node, const std::vector<std::string>& alternatives,
                                const std::string& id_path) {
  CriterionResult out;
  out.id = node.id;
  out.method = node.method;
  out.direction = node.direction;
  out.local_weight = node.weight;

  if (node.is_leaf()) {
    const PCMatrix& c = *node.matrix;
    try {
      out.diagnostics = matrix_diagnostics(c);
      switch (node.method) {
        case Method::Evm: out.raw = evm(c, alternatives); break;
        case Method::Gmm: out.raw = gmm(c, alternatives); break;
        case Method::HreAdditive:
        case Method::HreGeometric: {
          const ReferencePartition part(alternatives, node.known);
          if (part.unknown().empty())
            out.raw = passthrough_known(part);
          else
            out.raw = node.method == Method::HreAdditive ? solve_additive(c, part) : solve_geometric(c, part);
          break;
        }
      }
    } catch (const Error& e) {
      throw Error(e.kind(), "criterion " + id_path + ": " + e.message(), id_path);
    }
  } else {
    std::vector<double> local;
    std::vector<PriorityVector> vectors;
    double total = 0.0;
    for (const auto& child : node.subcriteria) total += *child.weight;
    for (const auto& child : node.subcriteria) {
      out.children.push_back(evaluate(child, alternatives, id_path + "." + child.id));
      local.push_back(*child.weight / total);
      vectors.push_back(out.children.back().normalized);
    }
    out.raw = aggregate_vectors(local, vectors);
  }

  out.normalized = node.direction == Direction::Cost ? invert_cost(out.raw) : normalize(out.raw);
  return out;
}

}  // namespace detail

/// Structural checks; throws on the first violation.
inline void validate_model(const DecisionModel& model) {
  if (model.alternatives.empty()) throw Error(ErrorKind::InvalidModel, "no alternatives", "alternatives");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < model.alternatives.size(); ++i)
    if (!seen.insert(model.alternatives[i]).second)
      throw Error(ErrorKind::InvalidModel, "duplicate alternative " + model.alternatives[i],
                  "alternatives[" + std::to_string(i) + "]");
  if (model.criteria.empty()) throw Error(ErrorKind::InvalidModel, "no criteria", "criteria");

  std::set<std::string> ids;
  std::size_t weighted = 0;
  for (std::size_t t = 0; t < model.criteria.size(); ++t) {
    detail::validate_node(model.criteria[t], model.alternatives, ids, "criteria[" + std::to_string(t) + "]");
    if (model.criteria[t].weight) ++weighted;
  }

  if (model.criteria_matrix) {
    if (weighted != 0)
      throw Error(ErrorKind::MixedWeightSpecification, "criteria carry explicit weights and a criteria matrix");
    if (model.criteria_matrix->order() != model.criteria.size())
      throw Error(ErrorKind::DimensionMismatch, "criteria matrix order differs from the number of criteria",
                  "criteria_matrix");
    if (is_hre(model.criteria_method))
      throw Error(ErrorKind::InvalidModel, "criteria weights are derived with evm or gmm", "criteria_method");
  } else {
    if (weighted != model.criteria.size())
      throw Error(ErrorKind::MixedWeightSpecification,
                  "either every criterion has a weight or a criteria matrix is given");
    double total = 0.0;
    for (const auto& c : model.criteria) total += *c.weight;
    if (!(total > 0)) throw Error(ErrorKind::InvalidModel, "criteria weights sum to zero", "criteria");
  }
}

/// Finds a criterion by id anywhere in the tree.
inline const CriterionNode* find_criterion(const DecisionModel& model, std::string_view id) {
  struct Walker {
    static const CriterionNode* find(const std::vector<CriterionNode>& nodes, std::string_view id) {
      for (const auto& n : nodes) {
        if (n.id == id) return &n;
        if (const auto* hit = find(n.subcriteria, id)) return hit;
      }
      return nullptr;
    }
  };
  return Walker::find(model.criteria, id);
}

inline PriorityVector criteria_weights(const DecisionModel& model) {
  std::vector<std::string> ids;
  for (const auto& c : model.criteria) ids.push_back(c.id);

  if (model.criteria_matrix) {
    for (const auto& c : model.criteria)
      if (c.weight) throw Error(ErrorKind::MixedWeightSpecification, "explicit weight on " + c.id + " alongside a criteria matrix");
    return model.criteria_method == Method::Gmm ? gmm(*model.criteria_matrix, ids) : evm(*model.criteria_matrix, ids);
  }
  std::vector<double> w;
  for (const auto& c : model.criteria) {
    if (!c.weight) throw Error(ErrorKind::MixedWeightSpecification, "criterion " + c.id + " has no weight");
    w.push_back(*c.weight);
  }
  return normalize(PriorityVector(std::move(ids), std::move(w)));
}

/// Full per-criterion evaluation of one node (recursing into sub-criteria).
inline CriterionResult evaluate_criterion(const CriterionNode& node, const std::vector<std::string>& alternatives) {
  std::set<std::string> ids;
  detail::validate_node(node, alternatives, ids, node.id);
  return detail::evaluate(node, alternatives, node.id);
}

inline PriorityVector rank_criterion(const CriterionNode& node, const std::vector<std::string>& alternatives) {
  return evaluate_criterion(node, alternatives).normalized;
}

/// Ranks every criterion and combines the normalized vectors with the
/// criteria weights.
inline RankingReport aggregate(const DecisionModel& model) {
  validate_model(model);
  RankingReport report;
  report.alternatives = model.alternatives;
  report.criteria_weights = criteria_weights(model);

  std::vector<PriorityVector> vectors;
  for (const auto& node : model.criteria) {
    report.criteria.push_back(detail::evaluate(node, model.alternatives, node.id));
    vectors.push_back(report.criteria.back().normalized);
  }
  report.final = aggregate_vectors(report.criteria_weights.values(), vectors);
  return report;
}

}  // namespace hre
