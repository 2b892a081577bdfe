#include <landflow/bracketgen.hpp>

#include <stdexcept>
#include <utility>

namespace landflow {

namespace {

using FieldKey = std::pair<std::size_t, Monomial>;

SparseSpan<FieldKey>::Vector coefficient_vector(const PolyVectorField& f) {
  SparseSpan<FieldKey>::Vector v;
  for (std::size_t k = 0; k < f.dim(); ++k) {
    for (const auto& [m, c] : f.component(k).terms()) v.emplace(FieldKey{k, m}, c);
  }
  return v;
}

// Pointwise rank tracker over exact or floating configurations.
class PointwiseRank {
 public:
  explicit PointwiseRank(const LandmarkConfig& cfg)
      : cfg_(cfg), exact_(cfg.size() * cfg.dim()), numeric_(cfg.size() * cfg.dim()) {}

  bool add(const PolyVectorField& f) {
    return cfg_.is_exact() ? exact_.add(lifted_column(f, cfg_)) : numeric_.add(lifted_column_numeric(f, cfg_));
  }
  std::size_t rank() const { return cfg_.is_exact() ? exact_.rank() : numeric_.rank(); }

 private:
  const LandmarkConfig& cfg_;
  ExactSpan exact_;
  NumericSpan numeric_;
};

}  // namespace

RankCertificate closure_search(std::size_t d, const LandmarkConfig& cfg, const ClosureOptions& opts) {
  if (cfg.dim() != d) throw std::invalid_argument("closure_search: configuration dimension differs from d");
  if (opts.max_depth < 0) throw std::invalid_argument("closure_search: max_depth must be non-negative");
  const int max_degree = opts.max_degree.value_or(2 * static_cast<int>(cfg.size()) + 3);
  if (max_degree < 0) throw std::invalid_argument("closure_search: max_degree must be non-negative");

  const GeneratorPair gens = generator_pair(d);
  const std::size_t target = cfg.size() * d;

  PointwiseRank pointwise(cfg);
  SparseSpan<FieldKey> symbolic;
  std::vector<BracketExpr> retained;
  std::vector<BracketExpr> certificate;
  std::size_t examined = 0;

  auto consider = [&](const BracketExpr& e) {
    ++examined;
    if (e.value().is_zero() || e.value().degree() > max_degree) return false;
    if (!symbolic.add(coefficient_vector(e.value()))) return false;
    retained.push_back(e);
    if (pointwise.add(e.value())) certificate.push_back(e);
    return true;
  };

  // Indices into `retained` of the fields new at the previous level.
  std::vector<std::size_t> frontier;
  for (const auto& g : {BracketExpr::gen_x(gens), BracketExpr::gen_y(gens)}) {
    if (pointwise.rank() == target) break;
    if (consider(g)) frontier.push_back(retained.size() - 1);
  }

  for (int level = 1; level <= opts.max_depth && pointwise.rank() < target && !frontier.empty(); ++level) {
    // Fields retained during this level join the next frontier only.
    const std::size_t kept = retained.size();
    std::vector<std::size_t> next;
    for (const std::size_t fresh : frontier) {
      for (std::size_t r = 0; r < kept && pointwise.rank() < target; ++r) {
        // Pairs inside the frontier are formed once, older operand on the left.
        if (retained[r].depth() == level - 1 && r >= fresh) continue;
        auto candidate = BracketExpr::bracket(retained[r], retained[fresh]);
        if (consider(candidate)) next.push_back(retained.size() - 1);
      }
      if (pointwise.rank() == target) break;
    }
    frontier = std::move(next);
  }

  std::vector<PolyVectorField> values;
  values.reserve(certificate.size());
  for (const auto& e : certificate) values.push_back(e.value());
  LiftedEvaluation matrix = lift_evaluate(values, cfg);
  const std::size_t achieved = pointwise.rank();

  return RankCertificate{cfg,     std::move(certificate), std::move(matrix), achieved, target,
                         achieved == target, opts.max_depth, max_degree, examined};
}

PolyVectorField separation_field(const LandmarkConfig& cfg, std::size_t i, std::size_t j) {
  const std::size_t d = cfg.dim();
  if (i >= cfg.size()) throw std::out_of_range("separation_field: landmark index out of range");
  if (j >= d) throw std::out_of_range("separation_field: coordinate index out of range");

  auto coord = [&](std::size_t m, std::size_t k) -> Rational {
    return cfg.is_exact() ? cfg.exact_point(m)[k] : Rational(cfg.point(m)[k]);
  };

  Polynomial p = Polynomial::constant(d, 1);
  for (std::size_t m = 0; m < cfg.size(); ++m) {
    if (m == i) continue;
    if (d == 1) {
      p = p * (Polynomial::variable(1, 0) - Polynomial::constant(1, coord(m, 0)));
    } else {
      Polynomial dist2(d);
      for (std::size_t k = 0; k < d; ++k) {
        const Polynomial diff = Polynomial::variable(d, k) - Polynomial::constant(d, coord(m, k));
        dist2 += diff * diff;
      }
      p = p * dist2;
    }
  }
  return PolyVectorField::along(p, j);
}

}  // namespace landflow
