#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "hre/error.hpp"
#include "hre/linalg.hpp"

namespace hre {

inline constexpr double kDefaultRelativeTolerance = 1e-9;

/// Square matrix of strictly positive pairwise judgments; entry (i, j) says
/// how many times alternative i is preferred to alternative j. The diagonal
/// is exactly 1. Reciprocity is not required.
class PCMatrix {
 public:
  /// Validating constructor. Error paths are 0-based `[i][j]` cell suffixes.
  explicit PCMatrix(const std::vector<std::vector<double>>& grid) : m_(grid.size(), grid.size()) {
    const std::size_t n = grid.size();
    if (n == 0) throw Error(ErrorKind::NonSquare, "matrix has no rows");
    for (std::size_t i = 0; i < n; ++i) {
      if (grid[i].size() != n)
        throw Error(ErrorKind::NonSquare,
                    "row " + std::to_string(i + 1) + " has " + std::to_string(grid[i].size()) +
                        " entries, expected " + std::to_string(n),
                    cell(i));
      for (std::size_t j = 0; j < n; ++j) m_(i, j) = grid[i][j];
    }
    validate();
  }

  PCMatrix(std::initializer_list<std::initializer_list<double>> grid)
      : PCMatrix(std::vector<std::vector<double>>(grid.begin(), grid.end())) {}

  explicit PCMatrix(DenseMatrix m) : m_(std::move(m)) {
    if (!m_.square() || m_.rows() == 0) throw Error(ErrorKind::NonSquare, "matrix is not square");
    validate();
  }

  /// c_ij = w_i / w_j, the consistent matrix generated by `w`.
  static PCMatrix from_weights(const std::vector<double>& w) {
    DenseMatrix m(w.size(), w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = i == j ? 1.0 : w[i] / w[j];
    return PCMatrix(std::move(m));
  }

  /// Every judgment equal to 1 (the element-wise identity: no preferences).
  static PCMatrix identity(std::size_t n) { return PCMatrix(DenseMatrix(n, n, 1.0)); }

  std::size_t order() const noexcept { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }
  const DenseMatrix& dense() const noexcept { return m_; }

  /// Rows and columns reordered so that new index k holds old index perm[k].
  PCMatrix permuted(const std::vector<std::size_t>& perm) const {
    DenseMatrix m(order(), order());
    for (std::size_t i = 0; i < order(); ++i)
      for (std::size_t j = 0; j < order(); ++j) m(i, j) = m_(perm[i], perm[j]);
    return PCMatrix(std::move(m));
  }

  PCMatrix transposed() const {
    DenseMatrix m(order(), order());
    for (std::size_t i = 0; i < order(); ++i)
      for (std::size_t j = 0; j < order(); ++j) m(i, j) = m_(j, i);
    return PCMatrix(std::move(m));
  }

  std::vector<std::vector<double>> to_rows() const {
    std::vector<std::vector<double>> rows(order());
    for (std::size_t i = 0; i < order(); ++i) rows[i].assign(m_.row(i).begin(), m_.row(i).end());
    return rows;
  }

  friend bool operator==(const PCMatrix&, const PCMatrix&) = default;

  static std::string cell(std::size_t i) { return "[" + std::to_string(i) + "]"; }
  static std::string cell(std::size_t i, std::size_t j) { return cell(i) + cell(j); }

 private:
  void validate() const {
    const std::size_t n = m_.rows();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double v = m_(i, j);
        const std::string where = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
        if (!std::isfinite(v)) throw Error(ErrorKind::NonFiniteEntry, "entry " + where + " is not finite", cell(i, j));
        if (!(v > 0)) throw Error(ErrorKind::NonPositiveEntry, "entry " + where + " is not positive", cell(i, j));
      }
      if (m_(i, i) != 1.0)
        throw Error(ErrorKind::NonUnitDiagonal, "diagonal entry " + std::to_string(i + 1) + " is not 1", cell(i, i));
    }
  }

  DenseMatrix m_;
};

/// Three pairwise distinct positions.
struct Triad {
  std::size_t i, j, k;

  constexpr bool valid() const noexcept { return i != j && j != k && k != i; }
};

inline EigenResult<double> principal_eigenpair(const PCMatrix& c, double tol = 1e-12, std::size_t max_iter = 10000) {
  return power_iteration(c.dense(), {tol, max_iter});
}

/// Pairs i < j with |c_ij * c_ji - 1| > tol.
inline std::vector<std::pair<std::size_t, std::size_t>> reciprocity_violations(
    const PCMatrix& c, double tol = kDefaultRelativeTolerance) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < c.order(); ++i)
    for (std::size_t j = i + 1; j < c.order(); ++j)
      if (std::abs(c(i, j) * c(j, i) - 1.0) > tol) out.emplace_back(i, j);
  return out;
}

inline bool is_reciprocal(const PCMatrix& c, double tol = kDefaultRelativeTolerance) {
  return reciprocity_violations(c, tol).empty();
}

inline bool is_consistent(const PCMatrix& c, double tol = kDefaultRelativeTolerance) {
  const std::size_t n = c.order();
  if (n < 3) return true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (std::abs(c(i, k) - c(i, j) * c(j, k)) > tol * c(i, k)) return false;
  return true;
}

/// Saaty's consistency index (lambda_max - n) / (n - 1), clamped at 0.
/// Defined as 0 for n = 1.
inline double saaty_ci(const PCMatrix& c) {
  const std::size_t n = c.order();
  if (n < 2) return 0.0;
  const double lambda = principal_eigenpair(c).lambda_max;
  return std::max(0.0, (lambda - double(n)) / double(n - 1));
}

/// Local inconsistency of one triad: how far c_ij is from c_ik * c_kj.
inline double triad_inconsistency(const PCMatrix& c, Triad t) {
  const double direct = c(t.i, t.j);
  const double indirect = c(t.i, t.k) * c(t.k, t.j);
  return std::min(std::abs(1.0 - direct / indirect), std::abs(1.0 - indirect / direct));
}

/// Koczkodaj's index: the worst triad inconsistency; 0 when n < 3.
inline double koczkodaj_index(const PCMatrix& c) {
  const std::size_t n = c.order();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Triad t{i, j, k};
        if (t.valid()) worst = std::max(worst, triad_inconsistency(c, t));
      }
  return worst;
}

}  // namespace hre
