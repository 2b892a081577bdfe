#include <landflow/complexfield.hpp>

#include <vector>

namespace landflow {

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexPolyField ComplexPolyField::monomial(std::uint32_t alpha, const GaussianRational& c) {
  ComplexPolyField f;
  f.add_term(alpha, c);
  return f;
}

GaussianRational ComplexPolyField::coefficient(std::uint32_t alpha) const {
  auto it = coeffs_.find(alpha);
  return it == coeffs_.end() ? GaussianRational{} : it->second;
}

void ComplexPolyField::add_term(std::uint32_t alpha, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

ComplexPolyField& ComplexPolyField::operator+=(const ComplexPolyField& o) {
  for (const auto& [a, c] : o.coeffs_) add_term(a, c);
  return *this;
}

ComplexPolyField& ComplexPolyField::operator*=(const GaussianRational& c) {
  CoefficientMap out;
  for (const auto& [a, v] : coeffs_) {
    auto p = v * c;
    if (!p.is_zero()) out.emplace(a, p);
  }
  coeffs_ = std::move(out);
  return *this;
}

ComplexPolyField ComplexPolyField::derivative() const {
  ComplexPolyField out;
  for (const auto& [a, c] : coeffs_) {
    if (a == 0) continue;
    out.add_term(a - 1, c * GaussianRational(Rational(a)));
  }
  return out;
}

ComplexPolyField complex_bracket(const ComplexPolyField& f, const ComplexPolyField& g) {
  const ComplexPolyField df = f.derivative();
  const ComplexPolyField dg = g.derivative();
  ComplexPolyField out;
  for (const auto& [a, fa] : f.coefficients()) {
    for (const auto& [b, gb] : dg.coefficients()) out.add_term(a + b, fa * gb);
  }
  for (const auto& [a, ga] : g.coefficients()) {
    for (const auto& [b, fb] : df.coefficients()) out.add_term(a + b, -(ga * fb));
  }
  return out;
}

namespace {

// Coefficients of (x + iy)^alpha indexed by the power of y: binom(alpha, k) i^k.
std::vector<GaussianRational> binomial_expansion(std::uint32_t alpha) {
  std::vector<GaussianRational> out;
  out.reserve(alpha + 1);
  mpz_class binom = 1;
  GaussianRational ipow(1);
  for (std::uint32_t k = 0; k <= alpha; ++k) {
    out.push_back(ipow * GaussianRational(Rational(binom)));
    binom = binom * (alpha - k) / (k + 1);
    ipow = ipow * GaussianRational::i();
  }
  return out;
}

}  // namespace

PolyVectorField to_real(const ComplexPolyField& f) {
  Polynomial px(2), py(2);
  for (const auto& [alpha, c] : f.coefficients()) {
    const auto expansion = binomial_expansion(alpha);
    for (std::uint32_t k = 0; k <= alpha; ++k) {
      const GaussianRational term = c * expansion[k];
      const Monomial m({alpha - k, k});
      px.add_term(m, term.re);
      py.add_term(m, term.im);
    }
  }
  return PolyVectorField({px, py});
}

ComplexPolyField from_real(const PolyVectorField& x) {
  if (x.dim() != 2) throw std::invalid_argument("from_real: field must be planar");
  // F = X^x + i X^y as a polynomial in (x, y) with Gaussian coefficients. If F
  // is Σ c_α z^α, the coefficient of x^α y^0 is exactly c_α; read those off
  // and require the full expansion to reproduce F.
  std::map<Monomial, GaussianRational> fxy;
  for (const auto& [m, c] : x.component(0).terms()) fxy[m] += GaussianRational(c, 0);
  for (const auto& [m, c] : x.component(1).terms()) fxy[m] += GaussianRational(0, c);

  ComplexPolyField out;
  for (const auto& [m, c] : fxy) {
    if (m.exponent(1) == 0) out.add_term(m.exponent(0), c);
  }
  const PolyVectorField back = to_real(out);
  if (!(back == x)) {
    throw NonHolomorphicError("from_real: X^x + i X^y is not a polynomial in z = x + iy");
  }
  return out;
}

}  // namespace landflow
