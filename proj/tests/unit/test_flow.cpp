#include <landflow/flow.hpp>

#include <gtest/gtest.h>

#include "test_support.hpp"

#include <cmath>

using namespace landflow;

namespace {

double cubic_exact(double x0, double c, double t) { return x0 / std::sqrt(1.0 - 2.0 * c * x0 * x0 * t); }

LandmarkConfig line(std::vector<double> xs) {
  std::vector<std::vector<double>> pts;
  for (double x : xs) pts.push_back({x});
  return LandmarkConfig::floating(1, std::move(pts));
}

ControlSchedule random_schedule(SeededStream& rng, std::size_t d, std::size_t legs, double ry) {
  ControlSchedule s(d);
  for (std::size_t k = 0; k < legs; ++k) {
    const bool x = k % 2 == 0;
    s.push_back(x ? Generator::x : Generator::y, x ? rng.uniform(-1, 1) : rng.uniform(-ry, ry));
  }
  return s;
}

FlowOptions integrator_only() {
  FlowOptions o;
  o.use_closed_forms = false;
  return o;
}

}  // namespace

TEST(ControlSchedule, ReverseAndValidation) {
  ControlSchedule s(2, {{Generator::x, 1.5}, {Generator::y, -0.25}});
  const auto r = s.reverse_and_negate();
  EXPECT_EQ(r.legs(), (std::vector<ScheduleLeg>{{Generator::y, 0.25}, {Generator::x, -1.5}}));
  EXPECT_EQ(r.reverse_and_negate(), s);
  EXPECT_THROW(s.push_back(Generator::x, std::nan("")), std::invalid_argument);
  EXPECT_THROW(s.push_back(Generator::x, INFINITY), std::invalid_argument);
  EXPECT_EQ(parse_generator("Y"), Generator::y);
  EXPECT_STREQ(generator_name(Generator::x), "X");
  EXPECT_THROW(parse_generator("Z"), std::invalid_argument);
}

TEST(CompiledField, RecognizesClosedFormShapes) {
  EXPECT_EQ(CompiledField(generator_pair(2).x).shape(), CompiledField::Shape::constant);
  EXPECT_EQ(CompiledField(generator_pair(1).y).shape(), CompiledField::Shape::cubic_line);
  EXPECT_DOUBLE_EQ(CompiledField(PolyVectorField::parse(1, "-(1/2)*x1^3 d1")).cubic_coefficient(), -0.5);
  EXPECT_EQ(CompiledField(generator_pair(2).y).shape(), CompiledField::Shape::general);
  EXPECT_EQ(CompiledField(PolyVectorField::parse(1, "x1^3 d1 + d1")).shape(), CompiledField::Shape::general);
  const CompiledField y3(generator_pair(3).y);
  const double p[3] = {1, 2, -1}, q[3] = {0.5, -0.25, 2};
  double out[3];
  y3.evaluate(p, out);
  const auto exact = generator_pair(3).y.evaluate(std::span<const double>(p, 3));
  for (int k = 0; k < 3; ++k) EXPECT_DOUBLE_EQ(out[k], exact[k]);
  y3.evaluate(q, out);
  const auto exact_q = generator_pair(3).y.evaluate(std::span<const double>(q, 3));
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(out[k], exact_q[k], 1e-15);
}

TEST(FlowPoint, ConstantFieldTranslates) {
  const std::vector<double> p{0, 0};
  const auto r = flow_point(PolyVectorField::coordinate(2, 0), 2.5, p);
  ASSERT_EQ(r.status, FlowStatus::ok);
  EXPECT_EQ(r.point, (std::vector<double>{2.5, 0}));
  const auto n = flow_point(PolyVectorField::coordinate(2, 0), 2.5, p, integrator_only());
  EXPECT_NEAR(n.point[0], 2.5, 1e-12);
}

TEST(FlowPoint, ZeroTimeIsIdentity) {
  const std::vector<double> p{0.3, -0.7};
  EXPECT_EQ(flow_point(generator_pair(2).y, 0.0, p).point, p);
  EXPECT_EQ(flow_point(generator_pair(2).y, 0.0, p, integrator_only()).point, p);
}

TEST(FlowPoint, CubicClosedFormMatchesIntegrator) {
  const auto y = generator_pair(1).y;
  for (double x0 : {-1.3, -0.4, 0.2, 0.9, 1.7}) {
    for (double t : {-0.8, -0.1, 0.05, 0.3}) {
      if (2 * x0 * x0 * t > 0.8) continue;
      const std::vector<double> p{x0};
      const double want = cubic_exact(x0, 1.0, t);
      const auto closed = flow_point(y, t, p);
      const auto numeric = flow_point(y, t, p, integrator_only());
      ASSERT_EQ(numeric.status, FlowStatus::ok);
      EXPECT_NEAR(closed.point[0], want, 1e-14 * std::abs(want));
      EXPECT_LE(std::abs(numeric.point[0] - want), 1e-9 * std::abs(want)) << x0 << " " << t;
    }
  }
}

TEST(FlowPoint, CubicEscapes) {
  const auto y = generator_pair(1).y;
  const std::vector<double> p{1.0};
  EXPECT_EQ(flow_point(y, 0.6, p).status, FlowStatus::escaped);
  EXPECT_EQ(flow_point(y, 0.6, p, integrator_only()).status, FlowStatus::escaped);
  // Backwards in time the same field is globally defined.
  EXPECT_EQ(flow_point(y, -50.0, p).status, FlowStatus::ok);
}

TEST(FlowPoint, StepBudgetExhaustionIsReported) {
  FlowOptions o = integrator_only();
  o.max_steps = 3;
  const std::vector<double> p{0.4, 0.1};
  EXPECT_EQ(flow_point(generator_pair(2).y, 2.0, p, o).status, FlowStatus::step_failure);
}

TEST(FlowConfig, EmptyScheduleIsIdentity) {
  const auto cfg = line({-1, 0.5, 2});
  const auto r = flow_config(ControlSchedule(1), cfg);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.final_state, cfg.flat());
  EXPECT_TRUE(order_preserved(cfg, r));
}

TEST(FlowConfig, PlanarTranslation) {
  const auto cfg = LandmarkConfig::floating(2, {{0, 0}, {1, -2}});
  const auto r = flow_config(ControlSchedule(2, {{Generator::x, -0.75}}), cfg);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.final_state, (std::vector<double>{-0.75, 0, 0.25, -2}));
}

TEST(FlowConfig, CubicOnSymmetricPair) {
  const double t = 0.3;
  const auto r = flow_config(ControlSchedule(1, {{Generator::y, t}}), line({-1, 1}));
  ASSERT_TRUE(r.ok());
  const double s = 1 / std::sqrt(1 - 2 * t);
  EXPECT_NEAR(r.final_state[0], -s, 1e-15);
  EXPECT_NEAR(r.final_state[1], s, 1e-15);
}

TEST(FlowConfig, EscapeNamesLegAndLandmark) {
  const auto r = flow_config(ControlSchedule(1, {{Generator::x, 0.1}, {Generator::y, 0.45}}), line({0, 1}));
  EXPECT_EQ(r.status, FlowStatus::escaped);
  ASSERT_TRUE(r.failed_leg.has_value());
  EXPECT_EQ(*r.failed_leg, 1u);
  ASSERT_TRUE(r.failed_landmark.has_value());
  EXPECT_EQ(*r.failed_landmark, 1u);
  EXPECT_FALSE(r.message.empty());
  EXPECT_THROW((void)r.final_config(), std::logic_error);
}

TEST(FlowConfig, ReverseScheduleReturnsToStart) {
  SeededStream rng(3, {});
  for (std::size_t d = 1; d <= 3; ++d) {
    const FlowEngine engine(d);
    for (int trial = 0; trial < 5; ++trial) {
      const auto cfg = LandmarkConfig::from_flat(d, testkit::unit_diameter_points(rng, d, 3));
      const auto s = random_schedule(rng, d, 6, 0.3);
      const auto fwd = engine.run(s, cfg.flat());
      if (!fwd.ok()) continue;
      const auto back = engine.run(s.reverse_and_negate(), fwd.final_state);
      ASSERT_TRUE(back.ok());
      for (std::size_t k = 0; k < cfg.flat().size(); ++k) {
        EXPECT_NEAR(back.final_state[k], cfg.flat()[k], 1e-8 * (1 + std::abs(cfg.flat()[k])));
      }
    }
  }
}

TEST(FlowConfig, SemigroupProperty) {
  for (std::size_t d = 2; d <= 3; ++d) {
    const auto cfg = LandmarkConfig::floating(d, {std::vector<double>(d, 0.3), std::vector<double>(d, -0.2)});
    const auto split = flow_config(ControlSchedule(d, {{Generator::y, 0.2}, {Generator::y, 0.35}}), cfg);
    const auto whole = flow_config(ControlSchedule(d, {{Generator::y, 0.55}}), cfg);
    ASSERT_TRUE(split.ok() && whole.ok());
    for (std::size_t k = 0; k < cfg.flat().size(); ++k) EXPECT_NEAR(split.final_state[k], whole.final_state[k], 1e-9);
  }
}

TEST(FlowConfig, TrajectorySamplesBracketEachLeg) {
  FlowOptions o;
  o.closed_form_samples = 4;
  const auto cfg = LandmarkConfig::floating(2, {{0, 0.5}, {0.5, 0}});
  const ControlSchedule s(2, {{Generator::x, 0.4}, {Generator::y, -0.3}});
  const auto r = flow_config(s, cfg, o);
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r.legs.size(), 2u);
  EXPECT_EQ(r.legs[0].samples.size(), 6u);
  for (const auto& leg : r.legs) {
    EXPECT_DOUBLE_EQ(leg.samples.front().time, 0.0);
    EXPECT_DOUBLE_EQ(leg.samples.back().time, leg.duration);
  }
  EXPECT_EQ(r.legs[0].samples.front().state, cfg.flat());
  EXPECT_EQ(r.legs.back().samples.back().state, r.final_state);
}

TEST(OrderPreserved, RandomLineSchedules) {
  SeededStream rng(9, {});
  int ok_runs = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto cfg = LandmarkConfig::from_flat(1, testkit::unit_diameter_points(rng, 1, 4));
    const auto r = flow_config(random_schedule(rng, 1, 8, 1.0), cfg);
    if (!r.ok()) continue;
    ++ok_runs;
    EXPECT_TRUE(order_preserved(cfg, r));
  }
  EXPECT_GT(ok_runs, 10);
  EXPECT_THROW(order_preserved(LandmarkConfig::floating(2, {{0, 0}}), flow_config(ControlSchedule(2), LandmarkConfig::floating(2, {{0, 0}}))),
               std::invalid_argument);
}

TEST(FlowEngine, RejectsMismatchedDimensions) {
  EXPECT_THROW(flow_config(ControlSchedule(2), line({0, 1})), std::invalid_argument);
}
