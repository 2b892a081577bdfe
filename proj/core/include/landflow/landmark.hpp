#pragma once

// Landmark configurations: n pairwise-distinct points of R^d, stored either
// with exact rational coordinates or as doubles.

#include <landflow/linalg.hpp>
#include <landflow/polyvec.hpp>

#include <cstddef>
#include <span>
#include <vector>

namespace landflow {

inline constexpr double kDefaultMinSeparation = 1e-12;

class LandmarkConfig {
 public:
  static LandmarkConfig exact(std::size_t d, std::vector<std::vector<Rational>> points);
  static LandmarkConfig floating(std::size_t d, std::vector<std::vector<double>> points,
                                 double min_separation = kDefaultMinSeparation);
  /// Floating configuration from a flat landmark-major coordinate vector.
  static LandmarkConfig from_flat(std::size_t d, std::span<const double> flat,
                                  double min_separation = kDefaultMinSeparation);

  std::size_t dim() const { return d_; }
  std::size_t size() const { return n_; }
  bool is_exact() const { return exact_; }

  /// Coordinates of landmark i as doubles (always available).
  std::span<const double> point(std::size_t i) const;
  /// Exact coordinates; only valid when is_exact().
  std::span<const Rational> exact_point(std::size_t i) const;
  /// All coordinates, landmark-major.
  const std::vector<double>& flat() const { return flat_; }

  double diameter() const;

 private:
  LandmarkConfig() = default;
  void validate_shape() const;

  std::size_t d_ = 0;
  std::size_t n_ = 0;
  bool exact_ = false;
  std::vector<double> flat_;
  std::vector<Rational> exact_flat_;
};

/// (n d) x m matrix; column c is the lifted field of fields[c] at the
/// configuration, row (i d + j) holds coordinate j of landmark i.
class LiftedEvaluation {
 public:
  LiftedEvaluation(RationalMatrix exact);
  LiftedEvaluation(Eigen::MatrixXd numeric);

  bool is_exact() const { return exact_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const RationalMatrix& exact_matrix() const { return exact_matrix_; }
  /// Floating view; for exact matrices this is a rounded copy.
  const Eigen::MatrixXd& matrix() const { return numeric_; }

  /// Exact elimination for exact matrices, thresholded SVD otherwise.
  std::size_t rank() const;

 private:
  bool exact_;
  std::size_t rows_;
  std::size_t cols_;
  RationalMatrix exact_matrix_;
  Eigen::MatrixXd numeric_;
};

LiftedEvaluation lift_evaluate(std::span<const PolyVectorField> fields, const LandmarkConfig& cfg);

/// Lifted column of a single field (exact rationals); requires an exact config.
std::vector<Rational> lifted_column(const PolyVectorField& field, const LandmarkConfig& cfg);
/// Lifted column in floating point.
std::vector<double> lifted_column_numeric(const PolyVectorField& field, const LandmarkConfig& cfg);

/// prod_{i<j} (x_j - x_i); throws on repeated entries.
Rational vandermonde_det(std::span<const Rational> xs);
double vandermonde_det(std::span<const double> xs);

/// d = 1 only: true iff both configurations have the same sorting permutation.
bool same_order_component(const LandmarkConfig& a, const LandmarkConfig& b);

/// The field acting as X on every landmark block of R^{n d}.
PolyVectorField lift_symbolic(const PolyVectorField& x, std::size_t n);

/// Brackets the symbolic lifts on R^{n d} and compares with the lift of [X, Y].
bool lifted_bracket_check(const PolyVectorField& x, const PolyVectorField& y,
                          const LandmarkConfig& cfg);

}  // namespace landflow
