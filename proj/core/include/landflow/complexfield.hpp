#pragma once

// Holomorphic fields f(z) d on C = R^2, with f a polynomial in z and
// Gaussian-rational coefficients. Bracket: [f d, g d] = (f g' - g f') d.
// The real field of f d is (Re f) d_x + (Im f) d_y.

#include <landflow/polyvec.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>

namespace landflow {

struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
  static GaussianRational i() { return {0, 1}; }

  bool is_zero() const { return re == 0 && im == 0; }
  GaussianRational operator-() const { return {-re, -im}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b);
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

class NonHolomorphicError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ComplexPolyField {
 public:
  using CoefficientMap = std::map<std::uint32_t, GaussianRational>;

  ComplexPolyField() = default;
  /// c z^alpha d.
  static ComplexPolyField monomial(std::uint32_t alpha, const GaussianRational& c = {1});

  const CoefficientMap& coefficients() const { return coeffs_; }
  GaussianRational coefficient(std::uint32_t alpha) const;
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return coeffs_.empty() ? -1 : static_cast<int>(coeffs_.rbegin()->first); }

  void add_term(std::uint32_t alpha, const GaussianRational& c);
  ComplexPolyField& operator+=(const ComplexPolyField& o);
  ComplexPolyField& operator*=(const GaussianRational& c);
  friend ComplexPolyField operator+(ComplexPolyField a, const ComplexPolyField& b) { return a += b; }
  friend ComplexPolyField operator*(ComplexPolyField a, const GaussianRational& c) { return a *= c; }
  friend bool operator==(const ComplexPolyField& a, const ComplexPolyField& b) = default;

  /// f' as a field coefficient map (used by the bracket).
  ComplexPolyField derivative() const;

 private:
  CoefficientMap coeffs_;
};

ComplexPolyField complex_bracket(const ComplexPolyField& f, const ComplexPolyField& g);

/// (Re f) d_x + (Im f) d_y.
PolyVectorField to_real(const ComplexPolyField& f);

/// Inverse of to_real. Throws NonHolomorphicError when X^x + i X^y is not a
/// polynomial in z = x + iy alone, std::invalid_argument when X is not planar.
ComplexPolyField from_real(const PolyVectorField& x);

}  // namespace landflow
