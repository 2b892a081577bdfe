#include <landflow/ladders.hpp>

#include <landflow/complexfield.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace landflow {

namespace {

Rational d1_constant(const BracketExpr& e, std::uint32_t alpha) {
  return e.value().component(0).coefficient(Monomial::variable(1, 0, alpha));
}

BracketExpr d1_expr(std::uint32_t alpha, const BracketExpr& x, const BracketExpr& y) {
  if (alpha == 0) return x;
  if (alpha == 3) return y;
  const BracketExpr x2 = BracketExpr::bracket(x, y);  // [X0, X3] = 3 X2
  if (alpha == 2) return x2;
  if (alpha == 1) return BracketExpr::bracket(x, x2);  // [X0, X2] = 2 X1
  // [X2, X_a] = (a - 2) X_{a+1}, starting from X3.
  BracketExpr cur = y;
  for (std::uint32_t a = 3; a < alpha; ++a) cur = BracketExpr::bracket(x2, cur);
  return cur;
}

// Tree for the d = 2 monomial with value c i^parity z^alpha d (real form).
BracketExpr d2_expr(int parity, std::uint32_t alpha, const BracketExpr& x, const BracketExpr& y) {
  const BracketExpr iz2 = BracketExpr::bracket(x, y);    // [d, i z^3 d] = 3 i z^2 d
  const BracketExpr iz1 = BracketExpr::bracket(x, iz2);  // [d, i z^2 d] = 2 i z d
  const BracketExpr i0 = BracketExpr::bracket(x, iz1);   // [d, i z d] = i d
  const BracketExpr z2 = BracketExpr::bracket(i0, y);    // [i d, i z^3 d] = -3 z^2 d
  const BracketExpr z3 = BracketExpr::bracket(iz1, y);   // [i z d, i z^3 d] = -z^3 d
  const BracketExpr z1 = BracketExpr::bracket(x, z2);    // [d, z^2 d] = 2 z d
  if (parity == 0) {
    switch (alpha) {
      case 0: return x;
      case 1: return z1;
      case 2: return z2;
      case 3: return z3;
      default: break;
    }
  } else {
    switch (alpha) {
      case 0: return i0;
      case 1: return iz1;
      case 2: return iz2;
      case 3: return y;
      default: break;
    }
  }
  // [z^2 d, (i) z^a d] = (a - 2) (i) z^{a+1} d.
  BracketExpr cur = parity == 0 ? z3 : y;
  for (std::uint32_t a = 3; a < alpha; ++a) cur = BracketExpr::bracket(z2, cur);
  return cur;
}

}  // namespace

LadderResult monomial_ladder_d1(std::uint32_t alpha) {
  const GeneratorPair gens = generator_pair(1);
  BracketExpr e = d1_expr(alpha, BracketExpr::gen_x(gens), BracketExpr::gen_y(gens));
  Rational c = d1_constant(e, alpha);
  return {std::move(e), std::move(c)};
}

LadderResult monomial_ladder_d2(int parity, std::uint32_t alpha) {
  if (parity != 0 && parity != 1) throw std::invalid_argument("monomial_ladder_d2: parity must be 0 or 1");
  const GeneratorPair gens = generator_pair(2);
  BracketExpr e = d2_expr(parity, alpha, BracketExpr::gen_x(gens), BracketExpr::gen_y(gens));
  const GaussianRational g = from_real(e.value()).coefficient(alpha);
  Rational c = parity == 0 ? g.re : g.im;
  return {std::move(e), std::move(c)};
}

LadderResult monomial_ladder_dge3(std::size_t d, std::size_t j, std::size_t k, std::uint32_t alpha) {
  HigherLadder ladder(d);
  return {ladder.pure(j, k, alpha), Rational(1)};
}

// ------------------------------------------------------------ HigherLadder

HigherLadder::HigherLadder(std::size_t d)
    : d_(d),
      gens_(d >= 3 ? generator_pair(d) : GeneratorPair{PolyVectorField(d), PolyVectorField(d)}),
      x_(BracketExpr::gen_x(gens_)),
      y_(BracketExpr::gen_y(gens_)) {
  if (d < 3) throw std::invalid_argument("HigherLadder: requires d >= 3");
}

std::size_t HigherLadder::wrap(std::ptrdiff_t i) const {
  const auto n = static_cast<std::ptrdiff_t>(d_);
  return static_cast<std::size_t>(((i % n) + n) % n);
}

PolyVectorField HigherLadder::target(std::size_t j, std::size_t k, std::uint32_t alpha) const {
  return PolyVectorField::monomial(Monomial::variable(d_, j, alpha), k);
}

const BracketExpr& HigherLadder::store(std::uint32_t alpha, std::size_t j, std::size_t k, BracketExpr e) {
  if (!(e.value() == target(j, k, alpha))) {
    throw std::logic_error("ladder construction for (x" + std::to_string(j + 1) + ")^" +
                           std::to_string(alpha) + " d" + std::to_string(k + 1) +
                           " produced " + e.value().to_string());
  }
  return memo_.insert_or_assign({alpha, j, k}, std::move(e)).first->second;
}

BracketExpr HigherLadder::second_derivative(std::size_t j) {
  const BracketExpr& dj = constant_field(j);
  return BracketExpr::bracket(dj, BracketExpr::bracket(dj, y_));
}

BracketExpr HigherLadder::symmetric_pair(std::size_t a, std::size_t b) {
  if (a == b) throw std::invalid_argument("symmetric_pair: indices must differ");
  const BracketExpr inner = BracketExpr::bracket(constant_field(b), y_);
  return BracketExpr::scaled(Rational(1, 2), BracketExpr::bracket(constant_field(a), inner));
}

const BracketExpr& HigherLadder::constant_field(std::size_t k) {
  k = wrap(static_cast<std::ptrdiff_t>(k));
  if (auto it = memo_.find({0, k, k}); it != memo_.end()) return it->second;
  // The key (0, k, k) stands for d_k; degree-0 monomials have no variable.
  if (k == 0) return memo_.insert_or_assign({0, 0, 0}, x_).first->second;
  // [d_j, [d_j, [d_j, Y]]] = 6 d_{j+1}.
  const BracketExpr prev = constant_field(k - 1);
  BracketExpr e = BracketExpr::scaled(
      Rational(1, 6),
      BracketExpr::bracket(prev, BracketExpr::bracket(prev, BracketExpr::bracket(prev, y_))));
  if (!(e.value() == PolyVectorField::coordinate(d_, k))) {
    throw std::logic_error("ladder construction for d" + std::to_string(k + 1) + " failed");
  }
  return memo_.insert_or_assign({0, k, k}, std::move(e)).first->second;
}

const BracketExpr& HigherLadder::linear(std::size_t j, std::size_t k) {
  if (auto it = memo_.find({1, j, k}); it != memo_.end()) return it->second;
  const auto sj = static_cast<std::ptrdiff_t>(j);
  const auto sk = static_cast<std::ptrdiff_t>(k);

  if (k == wrap(sj + 1)) {
    if (d_ >= 4) {
      // [x^{j+1} d_{j+1} + x^j d_{j+2}, x^{j+2} d_{j+1} + x^j d_{j+3}] = (x^j - x^{j+2}) d_{j+1}
      // [x^{j-1} d_{j+1} + x^j d_j, (x^j - x^{j+2}) d_{j+1}] = x^j d_{j+1}
      const BracketExpr a = symmetric_pair(j, wrap(sj + 1));
      const BracketExpr b = symmetric_pair(j, wrap(sj + 2));
      const BracketExpr p = symmetric_pair(j, wrap(sj - 1));
      return store(1, j, k, BracketExpr::bracket(p, BracketExpr::bracket(a, b)));
    }
    // d = 3: d_{j+3} = d_j spoils the step above. With
    // Q = x^j d_{j+1} - x^{j+1} d_{j+2} and H = x^{j+1} d_{j+1} + x^j d_{j+2},
    // [Q, H] = x^j d_{j+1} + x^{j+1} d_{j+2}.
    const BracketExpr q = BracketExpr::combine(
        {Rational(1, 4), Rational(-1, 4)}, {second_derivative(j), second_derivative(wrap(sj + 1))});
    const BracketExpr h = symmetric_pair(j, wrap(sj + 1));
    return store(1, j, k,
                 BracketExpr::combine({Rational(1, 2), Rational(1, 2)}, {BracketExpr::bracket(q, h), q}));
  }
  if (k == j) {
    // 1/2 [d_{j-1}, [d_j, Y]] = x^{j-1} d_{j+1} + x^j d_j.
    const std::size_t prev = wrap(sj - 1);
    const BracketExpr pair = symmetric_pair(prev, j);
    const BracketExpr other = linear(prev, wrap(sj + 1));
    return store(1, j, k, BracketExpr::combine({1, -1}, {pair, other}));
  }
  // [x^j d_m, x^m d_{m+1}] = x^j d_{m+1} for m + 1 != j.
  const std::size_t m = wrap(sk - 1);
  const BracketExpr left = linear(j, m);
  const BracketExpr right = linear(m, k);
  return store(1, j, k, BracketExpr::bracket(left, right));
}

const BracketExpr& HigherLadder::quadratic(std::size_t j, std::size_t k) {
  if (auto it = memo_.find({2, j, k}); it != memo_.end()) return it->second;
  const auto sj = static_cast<std::ptrdiff_t>(j);
  const auto sk = static_cast<std::ptrdiff_t>(k);

  if (k == wrap(sj + 1)) {
    // [x^j d_j, [d_j, Y]] = 6 (x^j)^2 d_{j+1} + R, applying x^j d_j again doubles
    // the first term only.
    const BracketExpr ljj = linear(j, j);
    const BracketExpr a = BracketExpr::bracket(ljj, BracketExpr::bracket(constant_field(j), y_));
    const BracketExpr b = BracketExpr::bracket(ljj, a);
    return store(2, j, k, BracketExpr::combine({Rational(1, 6), Rational(-1, 6)}, {b, a}));
  }
  if (k != j) {
    // [x^j d_m, [x^j d_m, (x^m)^2 d_{m+1}]] = 2 (x^j)^2 d_{m+1} for j != m, m + 1.
    const std::size_t m = wrap(sk - 1);
    const BracketExpr ljm = linear(j, m);
    const BracketExpr base = quadratic(m, k);
    const BracketExpr e = BracketExpr::bracket(ljm, BracketExpr::bracket(ljm, base));
    return store(2, j, k, BracketExpr::scaled(Rational(1, 2), e));
  }
  // (x^j)^2 d_j needs a field with nonzero divergence; [d_{j-1}, Y] supplies it.
  // [x^j d_j - x^{j-1} d_{j-1}, [d_{j-1}, Y]]
  //   = (x^j)^2 d_j - 9 (x^{j-1})^2 d_j - sum_{l != j-1, j} (x^l)^2 d_j
  //     - 2 sum_{l != j-2, j-1, j} x^{j-1} x^l d_{l+1}
  const std::size_t i = wrap(sj - 1);
  const BracketExpr diff = BracketExpr::combine({1, -1}, {linear(j, j), linear(i, i)});
  std::vector<Rational> coeffs{1, 9};
  std::vector<BracketExpr> terms{BracketExpr::bracket(diff, BracketExpr::bracket(constant_field(i), y_)),
                                 quadratic(i, j)};
  for (std::size_t l = 0; l < d_; ++l) {
    if (l == i || l == j) continue;
    coeffs.emplace_back(1);
    terms.push_back(quadratic(l, j));
  }
  const std::size_t skip = wrap(sj - 2);
  for (std::size_t l = 0; l < d_; ++l) {
    if (l == i || l == j || l == skip) continue;
    // [x^{j-1} d_l, (x^l)^2 d_{l+1}] = 2 x^l x^{j-1} d_{l+1}
    coeffs.emplace_back(1);
    terms.push_back(BracketExpr::bracket(linear(i, l), quadratic(l, wrap(static_cast<std::ptrdiff_t>(l) + 1))));
  }
  return store(2, j, k, BracketExpr::combine(std::move(coeffs), std::move(terms)));
}

const BracketExpr& HigherLadder::cubic(std::size_t j, std::size_t k) {
  if (auto it = memo_.find({3, j, k}); it != memo_.end()) return it->second;
  if (j != k) {
    // [x^j d_l, [(x^j)^2 d_l, (x^l)^2 d_k]] = 2 (x^j)^3 d_k for distinct j, k, l.
    std::size_t l = 0;
    while (l == j || l == k) ++l;
    const BracketExpr inner = BracketExpr::bracket(quadratic(j, l), quadratic(l, k));
    return store(3, j, k, BracketExpr::scaled(Rational(1, 2), BracketExpr::bracket(linear(j, l), inner)));
  }
  // With m = j - 1: [x^j d_m, [x^j d_m, [x^j d_m, Y]]] = 6 (x^j)^3 d_j - 18 (x^j)^2 x^m d_m,
  // and [(x^j)^2 d_m, (x^m)^2 d_m] = 2 (x^j)^2 x^m d_m.
  const std::size_t m = wrap(static_cast<std::ptrdiff_t>(j) - 1);
  const BracketExpr l = linear(j, m);
  const BracketExpr t = BracketExpr::bracket(l, BracketExpr::bracket(l, BracketExpr::bracket(l, y_)));
  const BracketExpr corr = BracketExpr::bracket(quadratic(j, m), quadratic(m, m));
  return store(3, j, k, BracketExpr::combine({Rational(1, 6), Rational(9, 6)}, {t, corr}));
}

const BracketExpr& HigherLadder::pure(std::size_t j, std::size_t k, std::uint32_t alpha) {
  if (j >= d_ || k >= d_) throw std::out_of_range("HigherLadder: coordinate index out of range");
  switch (alpha) {
    case 0: return constant_field(k);
    case 1: return linear(j, k);
    case 2: return quadratic(j, k);
    case 3: return cubic(j, k);
    default: break;
  }
  if (auto it = memo_.find({alpha, j, k}); it != memo_.end()) return it->second;
  // [(x^j)^2 d_j, (x^j)^a d_k] = a (x^j)^{a+1} d_k (k != j), (a - 2) (x^j)^{a+1} d_j (k == j).
  const BracketExpr prev = pure(j, k, alpha - 1);
  const std::uint32_t a = alpha - 1;
  const Rational factor = j == k ? Rational(a - 2) : Rational(a);
  const BracketExpr e = BracketExpr::bracket(quadratic(j, j), prev);
  return store(alpha, j, k, BracketExpr::scaled(1 / factor, e));
}

}  // namespace landflow
