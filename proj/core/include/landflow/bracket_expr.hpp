#pragma once

// Expression trees over the two generator symbols X and Y. Every node caches
// its field value, so a tree doubles as a replayable derivation of that value.

#include <landflow/polyvec.hpp>

#include <memory>
#include <string>
#include <vector>

namespace landflow {

class BracketExpr {
 public:
  enum class Kind { gen_x, gen_y, bracket, combine };

  static BracketExpr gen_x(const GeneratorPair& gens);
  static BracketExpr gen_y(const GeneratorPair& gens);
  static BracketExpr bracket(const BracketExpr& left, const BracketExpr& right);
  static BracketExpr combine(std::vector<Rational> coeffs, std::vector<BracketExpr> children);
  /// c * e as a one-child combination.
  static BracketExpr scaled(const Rational& c, const BracketExpr& e);

  Kind kind() const { return node_->kind; }
  const PolyVectorField& value() const { return node_->value; }
  /// Bracket nesting level; generators have depth 0, combinations take the
  /// maximum over their children.
  int depth() const { return node_->depth; }
  const std::vector<BracketExpr>& children() const { return node_->children; }
  const std::vector<Rational>& coefficients() const { return node_->coeffs; }

  /// Prefix form: X, Y, (br A B), (lin c1 A c2 B ...).
  std::string to_prefix() const;

  /// Recomputes the value from the leaves, ignoring cached values of inner
  /// nodes (shared subtrees are evaluated once).
  PolyVectorField evaluate() const;

  /// Number of distinct nodes in the DAG.
  std::size_t node_count() const;

 private:
  struct Node {
    Kind kind;
    PolyVectorField value;
    int depth = 0;
    std::vector<BracketExpr> children;
    std::vector<Rational> coeffs;
  };

  explicit BracketExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

}  // namespace landflow
