#include <landflow/identities.hpp>

#include <landflow/complexfield.hpp>
#include <landflow/polyvec.hpp>

#include <functional>
#include <stdexcept>
#include <utility>

namespace landflow {

namespace {

struct Instance {
  PolyVectorField lhs;
  PolyVectorField rhs;
  /// Corrected (lhs, rhs) when the displayed form is an erratum.
  std::optional<std::pair<PolyVectorField, PolyVectorField>> corrected;
  std::string where;
};

class Tally {
 public:
  Tally(std::string label, std::string statement, std::optional<std::string> erratum = std::nullopt) {
    r_.label = std::move(label);
    r_.statement = std::move(statement);
    r_.erratum = std::move(erratum);
    r_.holds = true;
    r_.corrected_holds = true;
  }

  void add(const Instance& in) {
    ++r_.instances;
    const bool ok = in.lhs == in.rhs;
    if (!ok) {
      ++r_.failures;
      r_.holds = false;
      if (r_.detail.empty()) {
        r_.detail = in.where + ": " + in.lhs.to_string() + " | " + in.rhs.to_string();
      }
    }
    const bool fixed = in.corrected ? in.corrected->first == in.corrected->second : ok;
    r_.corrected_holds = r_.corrected_holds && fixed;
  }

  IdentityResult done() { return std::move(r_); }

 private:
  IdentityResult r_;
};

// ------------------------------------------------------------------ d = 1

std::vector<IdentityResult> identities_d1() {
  auto xa = [](std::uint32_t a) { return PolyVectorField::monomial(Monomial::variable(1, 0, a), 0); };
  std::vector<IdentityResult> out;

  Tally general("d1/general", "[X_a, X_b] = (b - a) X_{a+b-1}, a, b <= 5");
  for (std::uint32_t a = 0; a <= 5; ++a) {
    for (std::uint32_t b = 0; b <= 5; ++b) {
      PolyVectorField rhs(1);
      if (a + b >= 1) rhs = xa(a + b - 1) * Rational(static_cast<int>(b) - static_cast<int>(a));
      general.add({lie_bracket(xa(a), xa(b)), rhs, std::nullopt,
                   "a=" + std::to_string(a) + " b=" + std::to_string(b)});
    }
  }
  out.push_back(general.done());

  Tally x0x3("d1/[X0,X3]", "[X_0, X_3] = 3 X_2");
  x0x3.add({lie_bracket(xa(0), xa(3)), xa(2) * Rational(3), std::nullopt, ""});
  out.push_back(x0x3.done());

  Tally x0x2("d1/[X0,X2]", "[X_0, X_2] = 2 X_1");
  x0x2.add({lie_bracket(xa(0), xa(2)), xa(1) * Rational(2), std::nullopt, ""});
  out.push_back(x0x2.done());

  Tally rec("d1/[X2,Xa]", "[X_2, X_a] = (a - 2) X_{a+1}, a >= 3");
  for (std::uint32_t a = 3; a <= 8; ++a) {
    rec.add({lie_bracket(xa(2), xa(a)), xa(a + 1) * Rational(a - 2), std::nullopt, "a=" + std::to_string(a)});
  }
  out.push_back(rec.done());
  return out;
}

// ------------------------------------------------------------------ d = 2

std::vector<IdentityResult> identities_d2() {
  using C = ComplexPolyField;
  const GaussianRational i = GaussianRational::i();
  auto z = [](std::uint32_t a, GaussianRational c = {1}) { return C::monomial(a, c); };

  struct Entry {
    std::string label;
    std::string statement;
    std::vector<std::tuple<C, C, C, std::string>> cases;  // f, g, expected [f, g]
    std::optional<std::string> erratum = std::nullopt;
    std::optional<C> corrected = std::nullopt;  // true value of [f, g] (single case)
  };
  std::vector<Entry> entries;
  entries.push_back({"d2/[d,iz^3d]", "[d, i z^3 d] = 3 i z^2 d", {{z(0), z(3, i), z(2, i * GaussianRational(3)), ""}}});
  entries.push_back({"d2/[d,iz^2d]", "[d, i z^2 d] = 2 i z d", {{z(0), z(2, i), z(1, i * GaussianRational(2)), ""}}});
  entries.push_back({"d2/[d,izd]", "[d, i z d] = i d", {{z(0), z(1, i), z(0, i), ""}}});
  entries.push_back({"d2/[id,iz^3d]", "[i d, i z^3 d] = -3 z^2 d", {{z(0, i), z(3, i), z(2, GaussianRational(-3)), ""}}});
  entries.push_back({"d2/[izd,iz^3d]", "[i z d, i z^3 d] = -z^3 d", {{z(1, i), z(3, i), z(3, GaussianRational(-1)), ""}},
                     std::string("the bracket is -2 z^3 d"), z(3, GaussianRational(-2))});
  Entry real_rec{"d2/[z^2d,z^ad]", "[z^2 d, z^a d] = (a - 2) z^{a+1} d", {}};
  Entry imag_rec{"d2/[z^2d,iz^ad]", "[z^2 d, i z^a d] = (a - 2) i z^{a+1} d", {}};
  for (std::uint32_t a = 0; a <= 8; ++a) {
    const Rational f(static_cast<int>(a) - 2);
    real_rec.cases.emplace_back(z(2), z(a), z(a + 1, GaussianRational(f)), "a=" + std::to_string(a));
    imag_rec.cases.emplace_back(z(2), z(a, i), z(a + 1, i * GaussianRational(f)), "a=" + std::to_string(a));
  }
  entries.push_back(std::move(real_rec));
  entries.push_back(std::move(imag_rec));

  std::vector<IdentityResult> out;
  for (const auto& e : entries) {
    Tally t(e.label, e.statement, e.erratum);
    for (const auto& [f, g, expected, where] : e.cases) {
      // The complex bracket and the real bracket of the images must both agree.
      const C got = complex_bracket(f, g);
      const PolyVectorField real_lhs = lie_bracket(to_real(f), to_real(g));
      Instance in{real_lhs, to_real(expected), std::nullopt, where};
      if (!(got == expected)) {
        in.lhs = to_real(got);
        in.where += " (complex)";
      }
      if (e.corrected) {
        const bool both = complex_bracket(f, g) == *e.corrected && real_lhs == to_real(*e.corrected);
        in.corrected = std::make_pair(both ? real_lhs : PolyVectorField(2), to_real(*e.corrected));
      }
      t.add(in);
    }
    out.push_back(t.done());
  }
  return out;
}

// ----------------------------------------------------------------- d >= 3

class HigherCatalog {
 public:
  explicit HigherCatalog(std::size_t d) : d_(d), y_(generator_pair(d).y) {}

  std::vector<IdentityResult> run() {
    std::vector<IdentityResult> out;
    const auto all = range();

    each1(out, "d3/[dj,Y]", "[d_j, Y] = 2 x^j S + |x|^2 d_{j+1},  S = sum_k x^k d_{k+1}", [&](int j) {
      return Instance{br(D(j), y_), F(x(j) * Rational(2), S()) + F(norm2(), j + 1), {}, ""};
    });
    each1(out, "d3/[dj,[dj,Y]]", "[d_j, [d_j, Y]] = 2 S + 4 x^j d_{j+1}", [&](int j) {
      return Instance{ddY(j), S() * Rational(2) + F(x(j) * Rational(4), j + 1), {}, ""};
    });
    each1(out, "d3/[dj,[dj,[dj,Y]]]", "[d_j, [d_j, [d_j, Y]]] = 6 d_{j+1}", [&](int j) {
      return Instance{br(D(j), ddY(j)), D(j + 1) * Rational(6), {}, ""};
    });
    each2(out, "d3/half", "1/2 [d_j, [d_k, Y]] = x^k d_{j+1} + x^j d_{k+1},  j != k",
          [&](int j, int k) { return j != k; },
          [&](int j, int k) {
            return Instance{br(D(j), br(D(k), y_)) * Rational(1, 2), F(x(k), j + 1) + F(x(j), k + 1), {}, ""};
          });
    each2(out, "d3/quarter", "1/4 ([d_j, [d_j, Y]] - [d_k, [d_k, Y]]) = x^j d_{j+1} - x^k d_{k+1},  j != k",
          [&](int j, int k) { return j != k; },
          [&](int j, int k) {
            return Instance{(ddY(j) - ddY(k)) * Rational(1, 4), F(x(j), j + 1) - F(x(k), k + 1), {}, ""};
          });
    {
      std::optional<std::string> erratum;
      if (d_ == 3) erratum = "at d = 3, d_{j+3} = d_j adds the term -x^j d_{j+2}";
      Tally t("d3/(xj-xj+2)", "[x^{j+1} d_{j+1} + x^j d_{j+2}, x^{j+2} d_{j+1} + x^j d_{j+3}] = (x^j - x^{j+2}) d_{j+1}",
              erratum);
      for (int j : all) {
        const PolyVectorField a = F(x(j + 1), j + 1) + F(x(j), j + 2);
        const PolyVectorField b = F(x(j + 2), j + 1) + F(x(j), j + 3);
        const PolyVectorField lhs = br(a, b);
        const PolyVectorField rhs = F(x(j) - x(j + 2), j + 1);
        Instance in{lhs, rhs, {}, at(j)};
        if (d_ == 3) in.corrected = std::make_pair(lhs, rhs - F(x(j), j + 2));
        t.add(in);
      }
      out.push_back(t.done());
    }
    each1(out, "d3/xj_dj+1", "[x^{j-1} d_{j+1} + x^j d_j, (x^j - x^{j+2}) d_{j+1}] = x^j d_{j+1}", [&](int j) {
      return Instance{br(F(x(j - 1), j + 1) + F(x(j), j), F(x(j) - x(j + 2), j + 1)), F(x(j), j + 1), {}, ""};
    });
    each1(out, "d3/xj_dj+2", "[x^j d_{j+1}, x^{j+1} d_{j+2}] = x^j d_{j+2}", [&](int j) {
      return Instance{br(F(x(j), j + 1), F(x(j + 1), j + 2)), F(x(j), j + 2), {}, ""};
    });
    each1(out, "d3/[dj-1,[dj,Y]]", "[d_{j-1}, [d_j, Y]] = 2 (x^{j-1} d_{j+1} + x^j d_j)", [&](int j) {
      return Instance{br(D(j - 1), br(D(j), y_)), (F(x(j - 1), j + 1) + F(x(j), j)) * Rational(2), {}, ""};
    });
    each1(out, "d3/deg2-a", "[x^j d_j, [d_j, Y]] = 2 x^j S + 4 (x^j)^2 d_{j+1} - 2 x^j x^{j-1} d_j", [&](int j) {
      const PolyVectorField rhs = F(x(j) * Rational(2), S()) + F(x(j) * x(j) * Rational(4), j + 1) -
                                  F(x(j) * x(j - 1) * Rational(2), j);
      return Instance{deg2a(j), rhs, {}, ""};
    });
    each1(out, "d3/deg2-b", "[x^j d_j, [d_j, Y]] = 6 (x^j)^2 d_{j+1} + sum_{l != j, j-1} 2 x^j x^l d_{l+1}",
          [&](int j) { return Instance{deg2a(j), F(x(j) * x(j) * Rational(6), j + 1) + tail(j), {}, ""}; });
    each1(out, "d3/deg2-c",
          "[x^j d_j, [x^j d_j, [d_j, Y]]] = 12 (x^j)^2 d_{j+1} + sum_{l != j, j-1} 2 x^j x^l d_{l+1}", [&](int j) {
            return Instance{br(F(x(j), j), deg2a(j)), F(x(j) * x(j) * Rational(12), j + 1) + tail(j), {}, ""};
          });
    each2(out, "d3/special-1", "[x^j d_k, (x^k)^2 d_{k+1}] = 2 x^k x^j d_{k+1},  j != k+1",
          [&](int j, int k) { return w(j) != w(k + 1); },
          [&](int j, int k) {
            return Instance{br(F(x(j), k), F(x(k) * x(k), k + 1)), F(x(k) * x(j) * Rational(2), k + 1), {}, ""};
          });
    each2(out, "d3/special-2", "[x^j d_k, [x^j d_k, (x^k)^2 d_{k+1}]] = 2 (x^j)^2 d_{k+1},  j != k, k+1",
          [&](int j, int k) { return w(j) != w(k + 1) && j != k; },
          [&](int j, int k) {
            const PolyVectorField a = F(x(j), k);
            return Instance{br(a, br(a, F(x(k) * x(k), k + 1))), F(x(j) * x(j) * Rational(2), k + 1), {}, ""};
          });
    each2(out, "d3/mixed-1", "[x^k d_j, (x^j)^2 d_k] = 2 x^k x^j d_k - (x^j)^2 d_j,  j != k",
          [&](int j, int k) { return j != k; },
          [&](int j, int k) {
            return Instance{br(F(x(k), j), F(x(j) * x(j), k)),
                            F(x(k) * x(j) * Rational(2), k) - F(x(j) * x(j), j), {}, ""};
          });
    each2(out, "d3/mixed-2", "[x^k d_j, x^{k-1} x^j d_k] = x^k x^{k-1} d_k - x^{k-1} x^j d_j,  j != k, k-1",
          [&](int j, int k) { return j != k && w(j) != w(k - 1); },
          [&](int j, int k) {
            return Instance{br(F(x(k), j), F(x(k - 1) * x(j), k)),
                            F(x(k) * x(k - 1), k) - F(x(k - 1) * x(j), j), {}, ""};
          });
    each3(out, "d3/cubic-a", "[(x^k)^2 d_l, (x^l)^2 d_j] = 2 (x^k)^2 x^l d_j,  j, k, l distinct", [&](int j, int k, int l) {
      return Instance{br(F(x(k) * x(k), l), F(x(l) * x(l), j)), F(x(k) * x(k) * x(l) * Rational(2), j), {}, ""};
    });
    each3(out, "d3/cubic-b", "[x^k d_l, [(x^k)^2 d_l, (x^l)^2 d_j]] = 2 (x^k)^3 d_j,  j, k, l distinct",
          [&](int j, int k, int l) {
            return Instance{br(F(x(k), l), br(F(x(k) * x(k), l), F(x(l) * x(l), j))),
                            F(x(k).pow(3) * Rational(2), j), {}, ""};
          });
    {
      Tally t("d3/cubic-c",
              "[x^{j+1} d_j, [x^{j+1} d_j, [x^{j+1} d_j, Y]]] = 6 (x^{j+1})^3 d_{j+1} - 16 (x^{j+1})^2 x^j d_j",
              std::string("the coefficient of (x^{j+1})^2 x^j d_j is -18, not -16"));
      for (int j : all) {
        const PolyVectorField lhs = triple(j);
        const PolyVectorField cube = F(x(j + 1).pow(3) * Rational(6), j + 1);
        const PolyVectorField mixed = F(x(j + 1) * x(j + 1) * x(j), j);
        t.add({lhs, cube - mixed * Rational(16), std::make_pair(lhs, cube - mixed * Rational(18)), at(j)});
      }
      out.push_back(t.done());
    }
    {
      Tally t("d3/cubic-d",
              "[x^{j+1} d_j, [x^{j+1} d_j, [x^{j+1} d_j, Y]]] + 8 [(x^{j+1})^2 d_j, (x^j)^2 d_j] = 6 (x^{j+1})^3 d_{j+1}",
              std::string("the multiplier of [(x^{j+1})^2 d_j, (x^j)^2 d_j] must be 9, not 8"));
      for (int j : all) {
        const PolyVectorField corr = br(F(x(j + 1) * x(j + 1), j), F(x(j) * x(j), j));
        const PolyVectorField rhs = F(x(j + 1).pow(3) * Rational(6), j + 1);
        t.add({triple(j) + corr * Rational(8), rhs, std::make_pair(triple(j) + corr * Rational(9), rhs), at(j)});
      }
      out.push_back(t.done());
    }
    {
      Tally t("d3/pure-recursion",
              "[(x^i)^2 d_i, (x^i)^a d_j] = a (x^i)^{a+1} d_j (i != j), (a - 2) (x^i)^{a+1} d_i (i = j), a >= 3");
      for (int i : all) {
        for (int j : all) {
          for (std::uint32_t a = 3; a <= 8; ++a) {
            const Rational f = i == j ? Rational(static_cast<int>(a) - 2) : Rational(a);
            t.add({br(F(x(i) * x(i), i), F(x(i).pow(a), j)), F(x(i).pow(a + 1) * f, j), {},
                   at(i, j) + " a=" + std::to_string(a)});
          }
        }
      }
      out.push_back(t.done());
    }
    return out;
  }

 private:
  using Maker1 = std::function<Instance(int)>;
  using Maker2 = std::function<Instance(int, int)>;
  using Maker3 = std::function<Instance(int, int, int)>;

  std::vector<int> range() const {
    std::vector<int> r;
    for (std::size_t j = 0; j < d_; ++j) r.push_back(static_cast<int>(j));
    return r;
  }
  static std::string at(int j) { return "j=" + std::to_string(j + 1); }
  static std::string at(int j, int k) { return "j=" + std::to_string(j + 1) + " k=" + std::to_string(k + 1); }

  void each1(std::vector<IdentityResult>& out, std::string label, std::string statement, const Maker1& make) {
    Tally t(std::move(label), std::move(statement));
    for (int j : range()) {
      Instance in = make(j);
      in.where = at(j);
      t.add(in);
    }
    out.push_back(t.done());
  }

  void each2(std::vector<IdentityResult>& out, std::string label, std::string statement,
             const std::function<bool(int, int)>& admissible, const Maker2& make) {
    Tally t(std::move(label), std::move(statement));
    for (int j : range()) {
      for (int k : range()) {
        if (!admissible(j, k)) continue;
        Instance in = make(j, k);
        in.where = at(j, k);
        t.add(in);
      }
    }
    out.push_back(t.done());
  }

  void each3(std::vector<IdentityResult>& out, std::string label, std::string statement, const Maker3& make) {
    Tally t(std::move(label), std::move(statement));
    for (int j : range()) {
      for (int k : range()) {
        for (int l : range()) {
          if (j == k || k == l || j == l) continue;
          Instance in = make(j, k, l);
          in.where = at(j, k) + " l=" + std::to_string(l + 1);
          t.add(in);
        }
      }
    }
    out.push_back(t.done());
  }

  std::size_t w(int i) const {
    const auto n = static_cast<int>(d_);
    return static_cast<std::size_t>(((i % n) + n) % n);
  }
  Polynomial x(int j) const { return Polynomial::variable(d_, w(j)); }
  PolyVectorField D(int k) const { return PolyVectorField::coordinate(d_, w(k)); }
  PolyVectorField F(const Polynomial& p, int k) const { return PolyVectorField::along(p, w(k)); }
  /// p * V, componentwise.
  static PolyVectorField F(const Polynomial& p, const PolyVectorField& v) {
    std::vector<Polynomial> comps;
    for (const auto& c : v.components()) comps.push_back(p * c);
    return PolyVectorField(std::move(comps));
  }
  static PolyVectorField br(const PolyVectorField& a, const PolyVectorField& b) { return lie_bracket(a, b); }

  Polynomial norm2() const {
    Polynomial p(d_);
    for (std::size_t j = 0; j < d_; ++j) p += Polynomial::variable(d_, j) * Polynomial::variable(d_, j);
    return p;
  }
  PolyVectorField S() const {
    PolyVectorField s(d_);
    for (int k : range()) s += F(x(k), k + 1);
    return s;
  }
  PolyVectorField ddY(int j) const { return br(D(j), br(D(j), y_)); }
  PolyVectorField deg2a(int j) const { return br(F(x(j), j), br(D(j), y_)); }
  PolyVectorField tail(int j) const {
    PolyVectorField t(d_);
    for (int l : range()) {
      if (w(l) == w(j) || w(l) == w(j - 1)) continue;
      t += F(x(j) * x(l) * Rational(2), l + 1);
    }
    return t;
  }
  PolyVectorField triple(int j) const {
    const PolyVectorField a = F(x(j + 1), j);
    return br(a, br(a, br(a, y_)));
  }

  std::size_t d_;
  PolyVectorField y_;
};

}  // namespace

std::vector<IdentityResult> check_displayed_identities(std::size_t d) {
  if (d == 0) throw std::invalid_argument("check_displayed_identities: d must be positive");
  if (d == 1) return identities_d1();
  if (d == 2) return identities_d2();
  return HigherCatalog(d).run();
}

}  // namespace landflow
