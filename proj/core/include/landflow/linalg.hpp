#pragma once

#include <landflow/rational.hpp>

#include <Eigen/Dense>

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace landflow {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Rational> column(std::size_t c) const;
  RationalMatrix transposed() const;
  Eigen::MatrixXd to_double() const;

  std::size_t rank() const;
  /// Requires a square matrix.
  Rational determinant() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Relative singular-value cutoff for floating rank decisions.
inline constexpr double kNumericRankThreshold = 1e-9;

/// Number of singular values above threshold * (largest singular value).
std::size_t numeric_rank(const Eigen::MatrixXd& m, double threshold = kNumericRankThreshold);

/// Exact row-echelon basis grown one vector at a time.
class ExactSpan {
 public:
  explicit ExactSpan(std::size_t dim) : dim_(dim) {}
  /// Adds v if it is independent of the current span; returns whether it was added.
  bool add(std::span<const Rational> v);
  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }

 private:
  std::vector<Rational> reduce(std::span<const Rational> v) const;

  std::size_t dim_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Floating counterpart of ExactSpan, deciding independence by SVD rank.
class NumericSpan {
 public:
  explicit NumericSpan(std::size_t dim, double threshold = kNumericRankThreshold)
      : dim_(dim), threshold_(threshold) {}
  bool add(std::span<const double> v);
  std::size_t rank() const { return rank_; }

 private:
  std::size_t dim_;
  double threshold_;
  std::vector<std::vector<double>> cols_;
  std::size_t rank_ = 0;
};

/// Exact echelon basis for sparse vectors keyed by an ordered type; used to
/// decide linear independence of polynomial vector fields by coefficients.
template <typename Key>
class SparseSpan {
 public:
  using Vector = std::map<Key, Rational>;

  /// Returns true (and stores the reduced vector) if v is independent.
  bool add(Vector v) {
    reduce(v);
    if (v.empty()) return false;
    const Key pivot = v.rbegin()->first;
    const Rational lead = v.rbegin()->second;
    for (auto& [k, c] : v) c /= lead;
    basis_.emplace(pivot, std::move(v));
    return true;
  }

  bool contains(Vector v) const {
    reduce(v);
    return v.empty();
  }

  std::size_t rank() const { return basis_.size(); }

 private:
  // Pivots are distinct maxima, so a leading key that is not a pivot cannot
  // cancel: the vector is independent and reduction stops.
  void reduce(Vector& v) const {
    while (!v.empty()) {
      auto top = std::prev(v.end());
      auto it = basis_.find(top->first);
      if (it == basis_.end()) return;
      axpy(v, it->second, top->second);
    }
  }

  // v -= factor * b (b has a unit leading coefficient).
  static void axpy(Vector& v, const Vector& b, Rational factor) {
    for (const auto& [k, c] : b) {
      auto [it, inserted] = v.try_emplace(k, -factor * c);
      if (!inserted) {
        it->second -= factor * c;
        if (it->second == 0) v.erase(it);
      }
    }
  }

  std::map<Key, Vector> basis_;
};

}  // namespace landflow
