#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hre/error.hpp"

namespace hre {

/// Row-major dense matrix. Sized for the small systems that show up in
/// pairwise-comparison work (tens of rows at most).
template <std::floating_point T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{0})
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

  Matrix(std::initializer_list<std::initializer_list<T>> grid) : rows_(grid.size()) {
    cols_ = rows_ == 0 ? 0 : grid.begin()->size();
    values_.reserve(rows_ * cols_);
    for (const auto& row : grid) {
      if (row.size() != cols_) throw Error(ErrorKind::NonSquare, "ragged initializer");
      values_.insert(values_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) noexcept { return values_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * cols_ + j]; }

  std::span<const T> row(std::size_t i) const noexcept {
    return {values_.data() + i * cols_, cols_};
  }
  std::span<const T> data() const noexcept { return values_; }

  T max_abs() const noexcept {
    T m{0};
    for (T v : values_) m = std::max(m, std::abs(v));
    return m;
  }

  std::vector<T> operator*(std::span<const T> x) const {
    std::vector<T> y(rows_, T{0});
    for (std::size_t i = 0; i < rows_; ++i) {
      T acc{0};
      for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[j];
      y[i] = acc;
    }
    return y;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> values_;
};

using DenseMatrix = Matrix<double>;

/// Gaussian elimination with partial pivoting. A pivot smaller than
/// 1e-13 * max|A| is treated as singular.
template <std::floating_point T>
std::vector<T> solve_linear_system(Matrix<T> a, std::vector<T> b) {
  const std::size_t n = a.rows();
  if (!a.square()) throw Error(ErrorKind::NonSquare, "coefficient matrix is not square");
  if (b.size() != n) throw Error(ErrorKind::DimensionMismatch, "right-hand side length differs from matrix order");

  const T threshold = T(1e-13) * a.max_abs();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (!(std::abs(a(pivot, col)) > threshold))
      throw Error(ErrorKind::SingularSystem, "pivot below threshold in column " + std::to_string(col + 1));
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
      std::swap(b[col], b[pivot]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const T factor = a(r, col) / a(col, col);
      if (factor == T{0}) continue;
      a(r, col) = T{0};
      for (std::size_t j = col + 1; j < n; ++j) a(r, j) -= factor * a(col, j);
      b[r] -= factor * b[col];
    }
  }

  std::vector<T> x(n);
  for (std::size_t i = n; i-- > 0;) {
    T acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
    x[i] = acc / a(i, i);
  }
  return x;
}

template <std::floating_point T>
struct EigenResult {
  T lambda_max{};
  std::vector<T> vector;  // strictly positive, sums to 1
  std::size_t iterations = 0;
};

struct PowerIterationOptions {
  double tolerance = 1e-12;
  std::size_t max_iterations = 10000;
};

/// Dominant eigenpair of an entrywise-positive square matrix by power
/// iteration from the uniform vector. Iterates are L1-normalized and the
/// loop stops once successive iterates agree to `tolerance` in the max norm.
/// The eigenvalue is the mean of the componentwise ratios (A w)_i / w_i.
template <std::floating_point T>
EigenResult<T> power_iteration(const Matrix<T>& a, PowerIterationOptions opts = {}) {
  const std::size_t n = a.rows();
  if (!a.square() || n == 0) throw Error(ErrorKind::NonSquare, "power iteration needs a non-empty square matrix");
  if (!(opts.tolerance > 0) || opts.max_iterations < 1)
    throw Error(ErrorKind::InvalidModel, "power iteration needs tolerance > 0 and max_iterations >= 1");

  std::vector<T> w(n, T{1} / T(n));
  for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
    std::vector<T> next = a * std::span<const T>(w);
    const T sum = std::accumulate(next.begin(), next.end(), T{0});
    if (!(sum > 0) || !std::isfinite(sum))
      throw Error(ErrorKind::EigenNotConverged, "iterate lost positivity");
    T delta{0};
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= sum;
      delta = std::max(delta, std::abs(next[i] - w[i]));
    }
    w = std::move(next);
    if (delta < T(opts.tolerance)) {
      const std::vector<T> aw = a * std::span<const T>(w);
      T lambda{0};
      for (std::size_t i = 0; i < n; ++i) lambda += aw[i] / w[i];
      return {lambda / T(n), std::move(w), it};
    }
  }
  throw Error(ErrorKind::EigenNotConverged,
              "no convergence after " + std::to_string(opts.max_iterations) + " iterations");
}

template <std::floating_point T>
T max_norm(std::span<const T> v) {
  T m{0};
  for (T x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace hre
