#pragma once

// Certification of the bracket-generating condition at a configuration.

#include <landflow/bracket_expr.hpp>
#include <landflow/landmark.hpp>

#include <cstddef>
#include <optional>
#include <vector>

namespace landflow {

inline constexpr int kDefaultMaxDepth = 12;

struct ClosureOptions {
  int max_depth = kDefaultMaxDepth;
  /// Unset means 2 n + 3 for n landmarks.
  std::optional<int> max_degree;
};

struct RankCertificate {
  LandmarkConfig config;
  /// Expressions whose lifted values raised the rank, in acceptance order.
  std::vector<BracketExpr> expressions;
  LiftedEvaluation matrix;
  std::size_t achieved_rank = 0;
  std::size_t target_rank = 0;
  bool success = false;
  /// Resolved search bounds.
  int max_depth = 0;
  int max_degree = 0;
  /// Brackets formed during the search (diagnostic).
  std::size_t candidates_examined = 0;
};

/// Breadth-first search over iterated brackets of the generator pair for d.
///
/// Level 0 holds X then Y. Each later level brackets every field new at the
/// previous level against every retained field (retained order, so X first).
/// A candidate is retained for further bracketing when it is linearly
/// independent of the retained fields as a polynomial vector field; it
/// contributes a certificate column when its lifted value raises the rank at
/// `cfg`. Stops at rank n d or when the bounds are exhausted.
RankCertificate closure_search(std::size_t d, const LandmarkConfig& cfg, const ClosureOptions& opts = {});

/// p d_j with p(x_i) != 0 and p(x_m) = 0 for m != i. For d = 1,
/// p = prod_{m != i} (x - x_m); for d >= 2, p = prod_{m != i} |x - x_m|^2.
/// Floating coordinates are converted exactly to rationals.
PolyVectorField separation_field(const LandmarkConfig& cfg, std::size_t i, std::size_t j);

}  // namespace landflow
