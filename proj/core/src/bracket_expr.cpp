#include <landflow/bracket_expr.hpp>

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace landflow {

BracketExpr BracketExpr::gen_x(const GeneratorPair& gens) {
  return BracketExpr(std::make_shared<const Node>(Node{Kind::gen_x, gens.x, 0, {}, {}}));
}

BracketExpr BracketExpr::gen_y(const GeneratorPair& gens) {
  return BracketExpr(std::make_shared<const Node>(Node{Kind::gen_y, gens.y, 0, {}, {}}));
}

BracketExpr BracketExpr::bracket(const BracketExpr& left, const BracketExpr& right) {
  return BracketExpr(std::make_shared<const Node>(
      Node{Kind::bracket, lie_bracket(left.value(), right.value()),
           std::max(left.depth(), right.depth()) + 1, {left, right}, {}}));
}

BracketExpr BracketExpr::combine(std::vector<Rational> coeffs, std::vector<BracketExpr> children) {
  if (coeffs.size() != children.size() || children.empty()) {
    throw std::invalid_argument("BracketExpr::combine: need matching, non-empty coefficient and child lists");
  }
  std::vector<PolyVectorField> values;
  values.reserve(children.size());
  int depth = 0;
  for (const auto& c : children) {
    values.push_back(c.value());
    depth = std::max(depth, c.depth());
  }
  auto value = scalar_combine(coeffs, values);
  return BracketExpr(std::make_shared<const Node>(
      Node{Kind::combine, std::move(value), depth, std::move(children), std::move(coeffs)}));
}

BracketExpr BracketExpr::scaled(const Rational& c, const BracketExpr& e) {
  return combine({c}, {e});
}

std::string BracketExpr::to_prefix() const {
  switch (kind()) {
    case Kind::gen_x:
      return "X";
    case Kind::gen_y:
      return "Y";
    case Kind::bracket:
      return "(br " + children()[0].to_prefix() + " " + children()[1].to_prefix() + ")";
    case Kind::combine: {
      std::string s = "(lin";
      for (std::size_t i = 0; i < children().size(); ++i) {
        s += " " + coefficients()[i].get_str() + " " + children()[i].to_prefix();
      }
      return s + ")";
    }
  }
  return {};
}

namespace {

PolyVectorField evaluate_memo(const BracketExpr& e,
                              std::unordered_map<const PolyVectorField*, PolyVectorField>& memo) {
  // Cached values have stable addresses for the lifetime of the node, which
  // makes them usable as node identity.
  const PolyVectorField* key = &e.value();
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  PolyVectorField out;
  switch (e.kind()) {
    case BracketExpr::Kind::gen_x:
    case BracketExpr::Kind::gen_y:
      out = e.value();
      break;
    case BracketExpr::Kind::bracket:
      out = lie_bracket(evaluate_memo(e.children()[0], memo), evaluate_memo(e.children()[1], memo));
      break;
    case BracketExpr::Kind::combine: {
      std::vector<PolyVectorField> vals;
      for (const auto& c : e.children()) vals.push_back(evaluate_memo(c, memo));
      out = scalar_combine(e.coefficients(), vals);
      break;
    }
  }
  memo.emplace(key, out);
  return out;
}

void collect(const BracketExpr& e, std::unordered_set<const PolyVectorField*>& seen) {
  if (!seen.insert(&e.value()).second) return;
  for (const auto& c : e.children()) collect(c, seen);
}

}  // namespace

PolyVectorField BracketExpr::evaluate() const {
  std::unordered_map<const PolyVectorField*, PolyVectorField> memo;
  return evaluate_memo(*this, memo);
}

std::size_t BracketExpr::node_count() const {
  std::unordered_set<const PolyVectorField*> seen;
  collect(*this, seen);
  return seen.size();
}

}  // namespace landflow
