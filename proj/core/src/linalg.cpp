#include <landflow/linalg.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace landflow {

std::vector<Rational> RationalMatrix::column(std::size_t c) const {
  std::vector<Rational> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

RationalMatrix RationalMatrix::transposed() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Eigen::MatrixXd RationalMatrix::to_double() const {
  Eigen::MatrixXd m(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = (*this)(r, c).get_d();
    }
  }
  return m;
}

std::size_t RationalMatrix::rank() const {
  ExactSpan span(rows_);
  for (std::size_t c = 0; c < cols_; ++c) span.add(column(c));
  return span.rank();
}

Rational RationalMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
  RationalMatrix a(*this);
  const std::size_t n = rows_;
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      const Rational f = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

std::size_t numeric_rank(const Eigen::MatrixXd& m, double threshold) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cut = threshold * s(0);
  return static_cast<std::size_t>((s.array() > cut).count());
}

std::vector<Rational> ExactSpan::reduce(std::span<const Rational> v) const {
  std::vector<Rational> w(v.begin(), v.end());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t p = pivots_[i];
    if (w[p] == 0) continue;
    const Rational f = w[p];
    for (std::size_t c = 0; c < dim_; ++c) {
      if (rows_[i][c] != 0) w[c] -= f * rows_[i][c];
    }
  }
  return w;
}

bool ExactSpan::add(std::span<const Rational> v) {
  if (v.size() != dim_) throw std::invalid_argument("ExactSpan: vector length mismatch");
  auto w = reduce(v);
  auto it = std::find_if(w.begin(), w.end(), [](const Rational& q) { return q != 0; });
  if (it == w.end()) return false;
  const auto p = static_cast<std::size_t>(it - w.begin());
  const Rational lead = w[p];
  for (auto& q : w) q /= lead;
  // Keep existing rows reduced against the new pivot so reduce() stays one pass.
  for (auto& row : rows_) {
    if (row[p] == 0) continue;
    const Rational f = row[p];
    for (std::size_t c = 0; c < dim_; ++c) {
      if (w[c] != 0) row[c] -= f * w[c];
    }
  }
  rows_.push_back(std::move(w));
  pivots_.push_back(p);
  return true;
}

bool NumericSpan::add(std::span<const double> v) {
  if (v.size() != dim_) throw std::invalid_argument("NumericSpan: vector length mismatch");
  cols_.emplace_back(v.begin(), v.end());
  Eigen::MatrixXd m(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(cols_.size()));
  for (std::size_t c = 0; c < cols_.size(); ++c) {
    for (std::size_t r = 0; r < dim_; ++r) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = cols_[c][r];
    }
  }
  const std::size_t r = numeric_rank(m, threshold_);
  if (r > rank_) {
    rank_ = r;
    return true;
  }
  cols_.pop_back();
  return false;
}

}  // namespace landflow
