#include <landflow/polyvec.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace landflow {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  if (s.empty()) throw std::invalid_argument("empty rational");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  std::size_t slash = s.find('/');
  auto digits = [&](std::size_t from, std::size_t to) {
    if (from >= to) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(from),
                       s.begin() + static_cast<std::ptrdiff_t>(to),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
  };
  if (slash == std::string::npos) {
    if (!digits(start, s.size())) throw std::invalid_argument("malformed rational: " + s);
  } else if (!digits(start, slash) || !digits(slash + 1, s.size())) {
    throw std::invalid_argument("malformed rational: " + s);
  }
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<std::uint32_t> exponents)
    : exps_(std::move(exponents)),
      degree_(std::accumulate(exps_.begin(), exps_.end(), std::uint32_t{0})) {}

Monomial Monomial::one(std::size_t dim) { return Monomial(std::vector<std::uint32_t>(dim, 0)); }

Monomial Monomial::variable(std::size_t dim, std::size_t j, std::uint32_t power) {
  if (j >= dim) throw std::out_of_range("variable index out of range");
  std::vector<std::uint32_t> e(dim, 0);
  e[j] = power;
  return Monomial(std::move(e));
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("monomial dimension mismatch");
  std::vector<std::uint32_t> e(exps_);
  for (std::size_t j = 0; j < e.size(); ++j) e[j] += other.exps_[j];
  return Monomial(std::move(e));
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
  if (auto c = a.exps_.size() <=> b.exps_.size(); c != 0) return c;
  for (std::size_t j = 0; j < a.exps_.size(); ++j) {
    if (auto c = a.exps_[j] <=> b.exps_[j]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

// -------------------------------------------------------------- Polynomial

void Polynomial::check_dim(std::size_t other) const {
  if (other != dim_) {
    throw std::invalid_argument("polynomial dimension mismatch: " + std::to_string(dim_) +
                                " vs " + std::to_string(other));
  }
}

Polynomial Polynomial::constant(std::size_t dim, const Rational& c) {
  Polynomial p(dim);
  p.add_term(Monomial::one(dim), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t dim, std::size_t j) {
  Polynomial p(dim);
  p.add_term(Monomial::variable(dim, j), 1);
  return p;
}

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
  Polynomial p(m.dim());
  p.add_term(m, c);
  return p;
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  // Graded order: the largest key has the largest degree.
  return static_cast<int>(terms_.rbegin()->first.degree());
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  check_dim(m.dim());
  Rational q = c;
  q.canonicalize();
  if (q == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, q);
  if (!inserted) {
    it->second += q;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_dim(other.dim_);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_dim(other.dim_);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coef] : terms_) coef *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_dim(b.dim_);
  Polynomial r(a.dim_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

Polynomial Polynomial::pow(std::uint32_t k) const {
  Polynomial r = constant(dim_, 1);
  for (std::uint32_t i = 0; i < k; ++i) r = r * *this;
  return r;
}

Polynomial Polynomial::derivative(std::size_t j) const {
  if (j >= dim_) throw std::out_of_range("derivative index out of range");
  Polynomial r(dim_);
  for (const auto& [m, c] : terms_) {
    const auto e = m.exponent(j);
    if (e == 0) continue;
    std::vector<std::uint32_t> ex(m.exponents().begin(), m.exponents().end());
    ex[j] -= 1;
    r.add_term(Monomial(std::move(ex)), c * e);
  }
  return r;
}

Polynomial Polynomial::embedded(std::size_t new_dim, std::size_t offset) const {
  if (offset + dim_ > new_dim) throw std::invalid_argument("embedding does not fit");
  Polynomial r(new_dim);
  for (const auto& [m, c] : terms_) {
    std::vector<std::uint32_t> ex(new_dim, 0);
    std::copy(m.exponents().begin(), m.exponents().end(), ex.begin() + static_cast<std::ptrdiff_t>(offset));
    r.add_term(Monomial(std::move(ex)), c);
  }
  return r;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  check_dim(point.size());
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t j = 0; j < dim_; ++j) {
      for (std::uint32_t e = 0; e < m.exponent(j); ++e) t *= point[j];
    }
    sum += t;
  }
  return sum;
}

double Polynomial::evaluate(std::span<const double> point) const {
  check_dim(point.size());
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = c.get_d();
    for (std::size_t j = 0; j < dim_; ++j) {
      if (const auto e = m.exponent(j); e != 0) t *= std::pow(point[j], static_cast<int>(e));
    }
    sum += t;
  }
  return sum;
}

// --------------------------------------------------------- PolyVectorField

PolyVectorField::PolyVectorField(std::size_t dim) : components_(dim, Polynomial(dim)) {}

PolyVectorField::PolyVectorField(std::vector<Polynomial> components)
    : components_(std::move(components)) {
  for (const auto& p : components_) {
    if (p.dim() != components_.size()) {
      throw std::invalid_argument("vector field component has wrong dimension");
    }
  }
}

PolyVectorField PolyVectorField::coordinate(std::size_t dim, std::size_t k) {
  return monomial(Monomial::one(dim), k, 1);
}

PolyVectorField PolyVectorField::monomial(const Monomial& m, std::size_t k, const Rational& c) {
  PolyVectorField f(m.dim());
  f.components_.at(k).add_term(m, c);
  return f;
}

PolyVectorField PolyVectorField::along(const Polynomial& p, std::size_t k) {
  PolyVectorField f(p.dim());
  f.components_.at(k) = p;
  return f;
}

bool PolyVectorField::is_zero() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const Polynomial& p) { return p.is_zero(); });
}

int PolyVectorField::degree() const {
  int d = -1;
  for (const auto& p : components_) d = std::max(d, p.degree());
  return d;
}

PolyVectorField PolyVectorField::operator-() const {
  PolyVectorField r(*this);
  for (auto& p : r.components_) p = -p;
  return r;
}

PolyVectorField& PolyVectorField::operator+=(const PolyVectorField& other) {
  if (dim() != other.dim()) throw std::invalid_argument("vector field dimension mismatch");
  for (std::size_t k = 0; k < dim(); ++k) components_[k] += other.components_[k];
  return *this;
}

PolyVectorField& PolyVectorField::operator-=(const PolyVectorField& other) {
  if (dim() != other.dim()) throw std::invalid_argument("vector field dimension mismatch");
  for (std::size_t k = 0; k < dim(); ++k) components_[k] -= other.components_[k];
  return *this;
}

PolyVectorField& PolyVectorField::operator*=(const Rational& c) {
  for (auto& p : components_) p *= c;
  return *this;
}

std::vector<Rational> PolyVectorField::evaluate(std::span<const Rational> point) const {
  if (point.size() != dim()) throw std::invalid_argument("point dimension mismatch");
  std::vector<Rational> out;
  out.reserve(dim());
  for (const auto& p : components_) out.push_back(p.evaluate(point));
  return out;
}

std::vector<double> PolyVectorField::evaluate(std::span<const double> point) const {
  if (point.size() != dim()) throw std::invalid_argument("point dimension mismatch");
  std::vector<double> out;
  out.reserve(dim());
  for (const auto& p : components_) out.push_back(p.evaluate(point));
  return out;
}

namespace {

std::string monomial_text(const Monomial& m) {
  std::string s;
  for (std::size_t j = 0; j < m.dim(); ++j) {
    const auto e = m.exponent(j);
    if (e == 0) continue;
    if (!s.empty()) s += '*';
    s += 'x' + std::to_string(j + 1);
    if (e > 1) s += '^' + std::to_string(e);
  }
  return s;
}

std::string coefficient_text(const Rational& abs_c) {
  if (abs_c.get_den() == 1) return abs_c.get_num().get_str();
  return "(" + abs_c.get_str() + ")";
}

}  // namespace

std::string PolyVectorField::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < dim(); ++k) {
    const auto& terms = components_[k].terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
      const auto& [m, c] = *it;
      const bool negative = c < 0;
      if (out.empty()) {
        if (negative) out += '-';
      } else {
        out += negative ? " - " : " + ";
      }
      const Rational a = abs(c);
      const std::string mono = monomial_text(m);
      std::string body;
      if (mono.empty()) {
        body = a == 1 ? std::string() : coefficient_text(a);
      } else {
        body = a == 1 ? mono : coefficient_text(a) + "*" + mono;
      }
      out += body.empty() ? "d" + std::to_string(k + 1) : body + " d" + std::to_string(k + 1);
    }
  }
  return out.empty() ? "0" : out;
}

namespace {

class FieldParser {
 public:
  FieldParser(std::size_t dim, std::string_view text) : dim_(dim), s_(text) {}

  PolyVectorField parse() {
    PolyVectorField out(dim_);
    skip();
    if (s_.substr(pos_) == "0") return out;
    bool first = true;
    while (true) {
      skip();
      if (pos_ >= s_.size()) break;
      Rational sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = get() == '-' ? -1 : 1;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      skip();
      auto [c, m, k] = term();
      out += PolyVectorField::monomial(m, k, sign * c);
    }
    if (first) fail("empty field");
    return out;
  }

 private:
  struct Term {
    Rational c;
    Monomial m;
    std::size_t k;
  };

  Term term() {
    Rational c = 1;
    std::vector<std::uint32_t> e(dim_, 0);
    bool need_factor = true;
    if (peek() == '(') {
      get();
      std::size_t close = s_.find(')', pos_);
      if (close == std::string_view::npos) fail("unbalanced parenthesis");
      c = parse_rational(s_.substr(pos_, close - pos_));
      pos_ = close + 1;
      need_factor = false;
    } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
      c = Rational(digits());
      need_factor = false;
    }
    skip();
    while (true) {
      if (!need_factor) {
        if (peek() != '*') break;
        get();
        skip();
      }
      if (peek() != 'x') {
        if (need_factor) break;
        fail("expected variable after '*'");
      }
      get();
      const auto j = index();
      std::uint32_t p = 1;
      if (peek() == '^') {
        get();
        p = static_cast<std::uint32_t>(std::stoul(digits()));
      }
      e[j] += p;
      need_factor = false;
      skip();
    }
    skip();
    if (peek() != 'd') fail("expected derivative symbol");
    get();
    const auto k = index();
    return {c, Monomial(std::move(e)), k};
  }

  std::size_t index() {
    const auto i = std::stoul(digits());
    if (i < 1 || i > dim_) fail("index out of range");
    return i - 1;
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return s_.at(pos_++); }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("cannot parse vector field at offset " + std::to_string(pos_) +
                                ": " + what);
  }

  std::size_t dim_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

PolyVectorField PolyVectorField::parse(std::size_t dim, std::string_view text) {
  return FieldParser(dim, text).parse();
}

// ------------------------------------------------------------------- brackets

PolyVectorField lie_bracket(const PolyVectorField& x, const PolyVectorField& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("lie_bracket: dimension mismatch");
  const std::size_t d = x.dim();
  std::vector<Polynomial> out(d, Polynomial(d));
  for (std::size_t j = 0; j < d; ++j) {
    const Polynomial& xj = x.component(j);
    const Polynomial& yj = y.component(j);
    for (std::size_t k = 0; k < d; ++k) {
      if (!xj.is_zero()) out[k] += xj * y.component(k).derivative(j);
      if (!yj.is_zero()) out[k] -= yj * x.component(k).derivative(j);
    }
  }
  return PolyVectorField(std::move(out));
}

PolyVectorField scalar_combine(std::span<const Rational> coeffs,
                               std::span<const PolyVectorField> fields) {
  if (coeffs.size() != fields.size()) {
    throw std::invalid_argument("scalar_combine: coefficient and field counts differ");
  }
  if (fields.empty()) throw std::invalid_argument("scalar_combine: no fields");
  PolyVectorField out(fields.front().dim());
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].dim() != out.dim()) throw std::invalid_argument("scalar_combine: dimension mismatch");
    out += fields[i] * coeffs[i];
  }
  return out;
}

GeneratorPair generator_pair(std::size_t d) {
  if (d < 1) throw std::invalid_argument("generator_pair: dimension must be positive");
  PolyVectorField x = PolyVectorField::coordinate(d, 0);
  if (d == 1) {
    return {x, PolyVectorField::monomial(Monomial::variable(1, 0, 3), 0)};
  }
  if (d == 2) {
    // Real form of i z^3 d: Re(i z^3) = -3x^2 y + y^3, Im(i z^3) = x^3 - 3 x y^2.
    Polynomial px(2), py(2);
    px.add_term(Monomial({2, 1}), -3);
    px.add_term(Monomial({0, 3}), 1);
    py.add_term(Monomial({3, 0}), 1);
    py.add_term(Monomial({1, 2}), -3);
    return {x, PolyVectorField({px, py})};
  }
  Polynomial norm2(d);
  for (std::size_t j = 0; j < d; ++j) norm2.add_term(Monomial::variable(d, j, 2), 1);
  std::vector<Polynomial> comps(d, Polynomial(d));
  for (std::size_t k = 0; k < d; ++k) {
    comps[(k + 1) % d] += norm2 * Polynomial::variable(d, k);
  }
  return {x, PolyVectorField(std::move(comps))};
}

}  // namespace landflow
