#pragma once

// Exact polynomial vector fields on R^d and their Lie brackets.
//
// Coordinates and components are indexed from 0 in the C++ API. The text form
// uses 1-based names: x1..xd for coordinates and d1..dd for the partial
// derivatives, e.g. "(3/2)*x1^2*x3 d2 - x2 d1".

#include <landflow/rational.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace landflow {

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> exponents);

  static Monomial one(std::size_t dim);
  static Monomial variable(std::size_t dim, std::size_t j, std::uint32_t power = 1);

  std::size_t dim() const { return exps_.size(); }
  std::uint32_t degree() const { return degree_; }
  std::uint32_t exponent(std::size_t j) const { return exps_.at(j); }
  std::span<const std::uint32_t> exponents() const { return exps_; }
  bool is_constant() const { return degree_ == 0; }

  Monomial operator*(const Monomial& other) const;

  // Graded lexicographic: total degree first, then x1 > x2 > ... .
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) = default;

 private:
  std::vector<std::uint32_t> exps_;
  std::uint32_t degree_ = 0;
};

class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational>;

  explicit Polynomial(std::size_t dim = 0) : dim_(dim) {}

  static Polynomial constant(std::size_t dim, const Rational& c);
  static Polynomial variable(std::size_t dim, std::size_t j);
  static Polynomial term(const Monomial& m, const Rational& c);

  std::size_t dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const;
  const TermMap& terms() const { return terms_; }
  Rational coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  Polynomial pow(std::uint32_t k) const;
  Polynomial derivative(std::size_t j) const;

  /// Re-indexes into a space of dimension `new_dim`, mapping coordinate j to
  /// j + offset.
  Polynomial embedded(std::size_t new_dim, std::size_t offset) const;

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

 private:
  void check_dim(std::size_t other) const;

  std::size_t dim_;
  TermMap terms_;
};

class PolyVectorField {
 public:
  explicit PolyVectorField(std::size_t dim = 0);
  explicit PolyVectorField(std::vector<Polynomial> components);

  /// The constant field d_k.
  static PolyVectorField coordinate(std::size_t dim, std::size_t k);
  /// c * m * d_k.
  static PolyVectorField monomial(const Monomial& m, std::size_t k, const Rational& c = 1);
  /// p * d_k.
  static PolyVectorField along(const Polynomial& p, std::size_t k);

  std::size_t dim() const { return components_.size(); }
  const Polynomial& component(std::size_t k) const { return components_.at(k); }
  std::span<const Polynomial> components() const { return components_; }
  bool is_zero() const;
  int degree() const;

  PolyVectorField operator-() const;
  PolyVectorField& operator+=(const PolyVectorField& other);
  PolyVectorField& operator-=(const PolyVectorField& other);
  PolyVectorField& operator*=(const Rational& c);
  friend PolyVectorField operator+(PolyVectorField a, const PolyVectorField& b) { return a += b; }
  friend PolyVectorField operator-(PolyVectorField a, const PolyVectorField& b) { return a -= b; }
  friend PolyVectorField operator*(PolyVectorField a, const Rational& c) { return a *= c; }
  friend PolyVectorField operator*(const Rational& c, PolyVectorField a) { return a *= c; }
  friend bool operator==(const PolyVectorField& a, const PolyVectorField& b) = default;

  std::vector<Rational> evaluate(std::span<const Rational> point) const;
  std::vector<double> evaluate(std::span<const double> point) const;

  std::string to_string() const;
  static PolyVectorField parse(std::size_t dim, std::string_view text);

 private:
  std::vector<Polynomial> components_;
};

/// [X, Y] = sum_k sum_j (X^j d_j Y^k - Y^j d_j X^k) d_k.
PolyVectorField lie_bracket(const PolyVectorField& x, const PolyVectorField& y);

PolyVectorField scalar_combine(std::span<const Rational> coeffs,
                               std::span<const PolyVectorField> fields);

/// The two generators used everywhere in the toolkit.
struct GeneratorPair {
  PolyVectorField x;
  PolyVectorField y;
};

/// d = 1: (d, x^3 d). d = 2: (d_x, -y(3x^2 - y^2) d_x + x(x^2 - 3y^2) d_y).
/// d >= 3: (d_1, |x|^2 sum_k x^k d_{k+1}) with indices taken cyclically.
GeneratorPair generator_pair(std::size_t d);

}  // namespace landflow
