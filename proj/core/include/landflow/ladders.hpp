#pragma once

// Constructive bracket ladders: explicit expression trees over the generator
// pair whose values are nonzero multiples of monomial fields.

#include <landflow/bracket_expr.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <tuple>

namespace landflow {

struct LadderResult {
  BracketExpr expr;
  /// expr.value() == constant * (target monomial field), constant != 0.
  Rational constant;
};

/// d = 1: value c x^alpha d.
LadderResult monomial_ladder_d1(std::uint32_t alpha);

/// d = 2: value to_real(c z^alpha d) for parity 0, to_real(c i z^alpha d) for
/// parity 1, with c a nonzero rational.
LadderResult monomial_ladder_d2(int parity, std::uint32_t alpha);

/// d >= 3: value c (x^j)^alpha d_k (0-based j, k).
LadderResult monomial_ladder_dge3(std::size_t d, std::size_t j, std::size_t k, std::uint32_t alpha);

/// Memoizing builder behind monomial_ladder_dge3; reuse one instance when
/// many monomials of the same dimension are needed. Every returned
/// expression has value exactly (x^j)^alpha d_k.
class HigherLadder {
 public:
  explicit HigherLadder(std::size_t d);

  std::size_t dim() const { return d_; }
  const BracketExpr& x() const { return x_; }
  const BracketExpr& y() const { return y_; }

  /// d_k.
  const BracketExpr& constant_field(std::size_t k);
  /// x^j d_k.
  const BracketExpr& linear(std::size_t j, std::size_t k);
  /// (x^j)^2 d_k.
  const BracketExpr& quadratic(std::size_t j, std::size_t k);
  /// (x^j)^3 d_k.
  const BracketExpr& cubic(std::size_t j, std::size_t k);
  /// (x^j)^alpha d_k for any alpha.
  const BracketExpr& pure(std::size_t j, std::size_t k, std::uint32_t alpha);

  /// 1/2 [d_a, [d_b, Y]] = x^b d_{a+1} + x^a d_{b+1}, a != b.
  BracketExpr symmetric_pair(std::size_t a, std::size_t b);
  /// [d_j, [d_j, Y]].
  BracketExpr second_derivative(std::size_t j);

 private:
  std::size_t wrap(std::ptrdiff_t i) const;
  PolyVectorField target(std::size_t j, std::size_t k, std::uint32_t alpha) const;
  const BracketExpr& store(std::uint32_t alpha, std::size_t j, std::size_t k, BracketExpr e);

  std::size_t d_;
  GeneratorPair gens_;
  BracketExpr x_;
  BracketExpr y_;
  std::map<std::tuple<std::uint32_t, std::size_t, std::size_t>, BracketExpr> memo_;
};

}  // namespace landflow
