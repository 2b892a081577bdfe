#include <landflow/landmark.hpp>

#include <gtest/gtest.h>

#include "test_support.hpp"

#include <algorithm>

using namespace landflow;

namespace {

std::vector<Rational> qs(std::initializer_list<Rational> v) { return std::vector<Rational>(v); }

LandmarkConfig line(std::vector<Rational> xs) {
  std::vector<std::vector<Rational>> pts;
  for (auto& x : xs) pts.push_back({x});
  return LandmarkConfig::exact(1, std::move(pts));
}

}  // namespace

TEST(LandmarkConfig, ExactAndFloatingViews) {
  const auto cfg = LandmarkConfig::exact(2, {{0, Rational(1, 2)}, {Rational(-3, 4), 2}});
  EXPECT_TRUE(cfg.is_exact());
  EXPECT_EQ(cfg.size(), 2u);
  EXPECT_EQ(cfg.exact_point(0)[1], Rational(1, 2));
  EXPECT_DOUBLE_EQ(cfg.point(1)[0], -0.75);
  EXPECT_EQ(cfg.flat(), (std::vector<double>{0, 0.5, -0.75, 2}));
  EXPECT_DOUBLE_EQ(cfg.diameter(), std::hypot(0.75, 1.5));
}

TEST(LandmarkConfig, RejectsCoincidentOrMisshapenInput) {
  EXPECT_THROW(LandmarkConfig::exact(1, {{1}, {1}}), std::invalid_argument);
  // Equal values written with different denominators still coincide.
  std::vector<std::vector<Rational>> zeros{{Rational(0, 3)}, {Rational(0, 4)}};
  EXPECT_THROW(LandmarkConfig::exact(1, zeros), std::invalid_argument);
  std::vector<std::vector<Rational>> halves{{Rational(2, 4)}, {Rational(1, 2)}};
  EXPECT_THROW(LandmarkConfig::exact(1, halves), std::invalid_argument);
  EXPECT_THROW(LandmarkConfig::exact(2, {{1, 2}, {3}}), std::invalid_argument);
  EXPECT_THROW(LandmarkConfig::floating(1, {{0.0}, {1e-14}}), std::invalid_argument);
  EXPECT_NO_THROW(LandmarkConfig::floating(1, {{0.0}, {1e-14}}, 0.0));
  EXPECT_THROW(LandmarkConfig::exact(1, {}), std::invalid_argument);
}

TEST(Vandermonde, FrozenValues) {
  EXPECT_EQ(vandermonde_det(qs({0, 1, 2})), Rational(2));
  EXPECT_EQ(vandermonde_det(qs({Rational(-1, 2), Rational(1, 3), 2, Rational(5, 7)})), Rational(-2125, 1029));
  EXPECT_THROW(vandermonde_det(qs({1, 2, 1})), std::invalid_argument);
}

TEST(Vandermonde, MatchesDeterminantOfPowerMatrix) {
  std::mt19937_64 rng(23);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 4; ++trial) {
      const auto cfg = testkit::random_exact_config(rng, 1, n);
      std::vector<Rational> xs;
      for (std::size_t i = 0; i < n; ++i) xs.push_back(cfg.exact_point(i)[0]);
      RationalMatrix v(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        Rational p = 1;
        for (std::size_t k = 0; k < n; ++k, p *= xs[i]) v(i, k) = p;
      }
      EXPECT_EQ(vandermonde_det(xs), v.determinant());
      std::vector<double> xd;
      for (auto& x : xs) xd.push_back(x.get_d());
      EXPECT_NEAR(vandermonde_det(xd), v.determinant().get_d(), 1e-9 * (1 + std::abs(v.determinant().get_d())));
    }
  }
}

TEST(LiftEvaluate, RowsFollowLandmarkMajorLayout) {
  const auto cfg = LandmarkConfig::exact(2, {{1, 2}, {3, Rational(1, 2)}});
  const std::vector<PolyVectorField> fs{PolyVectorField::parse(2, "x1 d1 + x2^2 d2"), PolyVectorField::coordinate(2, 1)};
  const auto m = lift_evaluate(fs, cfg);
  ASSERT_TRUE(m.is_exact());
  ASSERT_EQ(m.rows(), 4u);
  ASSERT_EQ(m.cols(), 2u);
  EXPECT_EQ(m.exact_matrix().column(0), qs({1, 4, 3, Rational(1, 4)}));
  EXPECT_EQ(m.exact_matrix().column(1), qs({0, 1, 0, 1}));
  EXPECT_EQ(m.rank(), 2u);
  EXPECT_EQ(lifted_column(fs[0], cfg), m.exact_matrix().column(0));
  const auto num = lifted_column_numeric(fs[0], cfg);
  EXPECT_DOUBLE_EQ(num[3], 0.25);
}

TEST(LiftEvaluate, PowerFieldsHaveFullRankExactlyForDistinctPoints) {
  std::mt19937_64 rng(29);
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto cfg = testkit::random_exact_config(rng, 1, n);
    std::vector<PolyVectorField> fs;
    for (std::uint32_t k = 0; k < n; ++k) fs.push_back(PolyVectorField::monomial(Monomial::variable(1, 0, k), 0));
    EXPECT_EQ(lift_evaluate(fs, cfg).rank(), n);
    const auto fcfg = LandmarkConfig::from_flat(1, cfg.flat());
    EXPECT_EQ(lift_evaluate(fs, fcfg).rank(), n);
  }
}

TEST(LiftEvaluate, SymbolicLiftCommutesWithBracket) {
  std::mt19937_64 rng(31);
  for (std::size_t d = 1; d <= 3; ++d) {
    const auto cfg = testkit::random_exact_config(rng, d, 3);
    for (int trial = 0; trial < 3; ++trial) {
      const auto a = testkit::random_field(rng, d, 3);
      const auto b = testkit::random_field(rng, d, 3);
      EXPECT_TRUE(lifted_bracket_check(a, b, cfg));
    }
  }
  const auto lifted = lift_symbolic(PolyVectorField::parse(1, "x1^2 d1"), 2);
  EXPECT_EQ(lifted, PolyVectorField::parse(2, "x1^2 d1 + x2^2 d2"));
}

TEST(SameOrderComponent, ComparesSortingPermutations) {
  EXPECT_TRUE(same_order_component(line({0, 1, 2}), line({-5, 0, 7})));
  EXPECT_FALSE(same_order_component(line({0, 1, 2}), line({1, 0, 2})));
  EXPECT_TRUE(same_order_component(line({2, 0}), line({1, Rational(-1, 2)})));
  EXPECT_THROW(same_order_component(line({0, 1}), line({0, 1, 2})), std::invalid_argument);
  const auto planar = LandmarkConfig::exact(2, {{0, 0}, {1, 1}});
  EXPECT_THROW(same_order_component(planar, planar), std::invalid_argument);
}
