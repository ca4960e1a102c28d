#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "hre/error.hpp"
#include "hre/pc_matrix.hpp"

namespace hre {

/// Labels "a1".."an", used when a caller does not name the alternatives.
inline std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back("a" + std::to_string(i + 1));
  return out;
}

/// Labelled priority values. Raw vectors carry criterion units (months,
/// currency, points); normalized ones sum to 1.
class PriorityVector {
 public:
  PriorityVector() = default;
  PriorityVector(std::vector<std::string> labels, std::vector<double> values, bool normalized = false)
      : labels_(std::move(labels)), values_(std::move(values)), normalized_(normalized) {
    if (labels_.size() != values_.size())
      throw Error(ErrorKind::DimensionMismatch, "label and value counts differ");
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (!std::isfinite(values_[i]) || values_[i] < 0)
        throw Error(ErrorKind::NonPositiveEntry, "priority of " + labels_[i] + " is negative or not finite");
  }

  std::size_t size() const noexcept { return values_.size(); }
  bool normalized() const noexcept { return normalized_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  double sum() const noexcept { return std::accumulate(values_.begin(), values_.end(), 0.0); }

  std::size_t argmax() const noexcept {
    return std::size_t(std::max_element(values_.begin(), values_.end()) - values_.begin());
  }

  /// Indices sorted by descending value; ties keep input order.
  std::vector<std::size_t> ranking() const {
    std::vector<std::size_t> idx(size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values_[a] > values_[b]; });
    return idx;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<double> values_;
  bool normalized_ = false;
};

inline PriorityVector normalize(const PriorityVector& v) {
  const double total = v.sum();
  if (!(total > 0)) throw Error(ErrorKind::NonPositiveEntry, "cannot normalize a vector with zero sum");
  std::vector<double> out(v.values());
  for (double& x : out) x /= total;
  return PriorityVector(v.labels(), std::move(out), true);
}

inline PriorityVector evm(const PCMatrix& c, std::vector<std::string> labels = {}) {
  if (labels.empty()) labels = default_labels(c.order());
  return PriorityVector(std::move(labels), principal_eigenpair(c).vector, true);
}

// Row geometric means, in log space so extreme judgments cannot overflow.
inline PriorityVector gmm(const PCMatrix& c, std::vector<std::string> labels = {}) {
  if (labels.empty()) labels = default_labels(c.order());
  const std::size_t n = c.order();
  std::vector<double> logs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) logs[i] += std::log(c(i, j));
    logs[i] /= double(n);
  }
  // shift by the max before exponentiating; cancels under normalization
  const double top = *std::max_element(logs.begin(), logs.end());
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = std::exp(logs[i] - top);
  return normalize(PriorityVector(std::move(labels), std::move(values)));
}

}  // namespace hre
