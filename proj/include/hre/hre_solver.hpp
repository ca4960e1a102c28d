#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hre/error.hpp"
#include "hre/linalg.hpp"
#include "hre/pc_matrix.hpp"
#include "hre/prioritization.hpp"

namespace hre {

/// Components at or below this are not counted as positive.
inline constexpr double kAdmissibilityThreshold = 1e-12;

/// Split of the alternatives into references with known priorities and
/// unknowns to be estimated. Positions follow `labels`.
class ReferencePartition {
 public:
  ReferencePartition(std::vector<std::string> labels, const std::map<std::string, double>& known)
      : labels_(std::move(labels)), known_value_(labels_.size()) {
    std::map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (!position.emplace(labels_[i], i).second)
        throw Error(ErrorKind::PartitionMismatch, "duplicate label " + labels_[i]);
    for (const auto& [label, value] : known) {
      auto it = position.find(label);
      if (it == position.end()) throw Error(ErrorKind::UnknownLabel, "known label " + label + " is not an alternative");
      if (!std::isfinite(value) || !(value > 0))
        throw Error(ErrorKind::NonPositiveEntry, "known value of " + label + " must be finite and positive");
      known_value_[it->second] = value;
    }
    for (std::size_t i = 0; i < labels_.size(); ++i)
      (known_value_[i] ? known_ : unknown_).push_back(i);
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<std::size_t>& known() const noexcept { return known_; }
  const std::vector<std::size_t>& unknown() const noexcept { return unknown_; }
  bool is_known(std::size_t i) const noexcept { return known_value_[i].has_value(); }
  double known_value(std::size_t i) const { return known_value_[i].value(); }

 private:
  std::vector<std::string> labels_;
  std::vector<std::optional<double>> known_value_;
  std::vector<std::size_t> known_;
  std::vector<std::size_t> unknown_;
};

enum class HreVariant { Additive, Geometric };

/// The linear system over the unknown alternatives: M w = b for the
/// additive variant, N mu = d for the geometric one.
struct HreSystem {
  HreVariant variant;
  DenseMatrix matrix;
  std::vector<double> rhs;
  std::vector<std::size_t> unknown;  // row k solves for alternative unknown[k]
};

namespace detail {

inline void check_solvable(const PCMatrix& c, const ReferencePartition& part) {
  if (part.size() != c.order())
    throw Error(ErrorKind::PartitionMismatch, "partition covers " + std::to_string(part.size()) +
                                                  " alternatives but the matrix has order " +
                                                  std::to_string(c.order()));
  if (part.unknown().empty()) throw Error(ErrorKind::EmptyUnknownSet, "every alternative is a reference");
  if (part.known().empty()) throw Error(ErrorKind::EmptyReferenceSet, "HRE needs at least one reference alternative");
}

// Full-length raw vector: solved values at unknown positions, references elsewhere.
inline PriorityVector catenate(const ReferencePartition& part, const std::vector<std::size_t>& unknown,
                               const std::vector<double>& solved) {
  std::vector<double> values(part.size());
  for (std::size_t i : part.known()) values[i] = part.known_value(i);
  for (std::size_t k = 0; k < unknown.size(); ++k) values[unknown[k]] = solved[k];
  return PriorityVector(part.labels(), std::move(values));
}

}  // namespace detail

/// w_i = 1/(n-1) * sum_{j != i} c_ij w_j for every unknown i, with n the
/// total number of alternatives.
inline HreSystem build_additive_system(const PCMatrix& c, const ReferencePartition& part) {
  detail::check_solvable(c, part);
  const auto& unknown = part.unknown();
  const std::size_t u = unknown.size();
  const double scale = 1.0 / double(c.order() - 1);

  HreSystem sys{HreVariant::Additive, DenseMatrix(u, u), std::vector<double>(u, 0.0), unknown};
  for (std::size_t r = 0; r < u; ++r) {
    for (std::size_t s = 0; s < u; ++s)
      sys.matrix(r, s) = r == s ? 1.0 : -scale * c(unknown[r], unknown[s]);
    double acc = 0.0;
    for (std::size_t j : part.known()) acc += c(unknown[r], j) * part.known_value(j);
    sys.rhs[r] = scale * acc;
  }
  return sys;
}

/// Raw priorities over all alternatives. Throws InadmissibleSolution when
/// a computed component is not strictly positive.
inline PriorityVector solve_additive(const PCMatrix& c, const ReferencePartition& part) {
  const HreSystem sys = build_additive_system(c, part);
  const std::vector<double> w = solve_linear_system(sys.matrix, sys.rhs);
  for (std::size_t k = 0; k < w.size(); ++k)
    if (!std::isfinite(w[k]) || !(w[k] > kAdmissibilityThreshold))
      throw Error(ErrorKind::InadmissibleSolution,
                  "additive HRE gives " + std::to_string(w[k]) + " for " + part.labels()[sys.unknown[k]]);
  return detail::catenate(part, sys.unknown, w);
}

/// Log-linearized geometric system. `log_base` only changes the unit of mu.
inline HreSystem build_geometric_system(const PCMatrix& c, const ReferencePartition& part,
                                        double log_base = std::numbers::e) {
  detail::check_solvable(c, part);
  const auto& unknown = part.unknown();
  const std::size_t u = unknown.size();
  const std::size_t n = c.order();
  const double inv_log_base = 1.0 / std::log(log_base);

  HreSystem sys{HreVariant::Geometric, DenseMatrix(u, u, -1.0), std::vector<double>(u, 0.0), unknown};
  for (std::size_t r = 0; r < u; ++r) {
    sys.matrix(r, r) = double(n - 1);
    const std::size_t i = unknown[r];
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      acc += std::log(c(i, j));
      if (part.is_known(j)) acc += std::log(part.known_value(j));
    }
    sys.rhs[r] = acc * inv_log_base;
  }
  return sys;
}

inline PriorityVector solve_geometric(const PCMatrix& c, const ReferencePartition& part,
                                      double log_base = std::numbers::e) {
  const HreSystem sys = build_geometric_system(c, part, log_base);
  std::vector<double> w = solve_linear_system(sys.matrix, sys.rhs);
  for (double& x : w) x = log_base == std::numbers::e ? std::exp(x) : std::pow(log_base, x);
  return detail::catenate(part, sys.unknown, w);
}

/// Degenerate case with no unknowns: the references themselves.
inline PriorityVector passthrough_known(const ReferencePartition& part) {
  if (!part.unknown().empty())
    throw Error(ErrorKind::PartitionMismatch, "passthrough requires every alternative to be known");
  std::vector<double> values;
  values.reserve(part.size());
  for (std::size_t i = 0; i < part.size(); ++i) values.push_back(part.known_value(i));
  return PriorityVector(part.labels(), std::move(values));
}

}  // namespace hre
