#pragma once
// Flows of polynomial vector fields and their composition along piecewise
// constant control schedules.

#include <landflow/landmark.hpp>
#include <landflow/polyvec.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace landflow {

enum class Generator { x, y };

/// "X" or "Y".
const char* generator_name(Generator g);
/// Inverse of generator_name; throws std::invalid_argument.
Generator parse_generator(std::string_view name);

struct ScheduleLeg {
  Generator generator;
  double duration;
  friend bool operator==(const ScheduleLeg&, const ScheduleLeg&) = default;
};

/// Legs are stored in application order: legs()[0] acts first. As a
/// composition of flows the schedule is e^{legs[m-1]} o ... o e^{legs[0]}.
class ControlSchedule {
 public:
  explicit ControlSchedule(std::size_t d = 1, std::vector<ScheduleLeg> legs = {});

  std::size_t dim() const { return d_; }
  const std::vector<ScheduleLeg>& legs() const { return legs_; }
  std::size_t size() const { return legs_.size(); }
  bool empty() const { return legs_.empty(); }
  void push_back(Generator g, double duration);

  /// The inverse schedule: legs reversed, durations negated.
  ControlSchedule reverse_and_negate() const;

  friend bool operator==(const ControlSchedule&, const ControlSchedule&) = default;

 private:
  std::size_t d_;
  std::vector<ScheduleLeg> legs_;
};

/// Floating-point evaluator for a polynomial field. Recognizes the shapes that
/// have closed-form flows by exact coefficient match.
class CompiledField {
 public:
  enum class Shape { general, constant, cubic_line };

  explicit CompiledField(const PolyVectorField& field);

  std::size_t dim() const { return d_; }
  Shape shape() const { return shape_; }
  /// Field values for constant fields.
  const std::vector<double>& constant_value() const { return constant_; }
  /// c in c x^3 d for the d = 1 cubic shape.
  double cubic_coefficient() const { return cubic_; }

  /// out[0..d) = X(x[0..d)).
  void evaluate(const double* x, double* out) const;

 private:
  struct Term {
    std::size_t component;
    double coefficient;
    std::vector<std::pair<std::size_t, std::uint32_t>> factors;
  };

  std::size_t d_;
  Shape shape_ = Shape::general;
  std::vector<double> constant_;
  double cubic_ = 0.0;
  std::vector<Term> terms_;
};

struct FlowOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  /// Per-coordinate state bound; exceeding it counts as finite-time escape.
  double bound = 1e6;
  std::size_t max_steps = 200000;
  /// Closed forms for constant and d = 1 cubic fields.
  bool use_closed_forms = true;
  bool record_trajectory = true;
  /// Extra evenly spaced samples per closed-form leg (endpoints are always kept).
  std::size_t closed_form_samples = 0;
  /// Landmarks closer than this at the end of a run are reported as a step failure.
  double min_separation = kDefaultMinSeparation;
};

enum class FlowStatus { ok, escaped, step_failure };

const char* status_name(FlowStatus s);

struct PointFlow {
  FlowStatus status = FlowStatus::ok;
  std::vector<double> point;
  std::size_t steps = 0;
};

/// e^{tX}(p).
PointFlow flow_point(const PolyVectorField& field, double t, std::span<const double> p,
                     const FlowOptions& opts = {});

struct TrajectorySample {
  /// Time since the start of the leg (same sign as the duration).
  double time;
  /// Landmark-major coordinates.
  std::vector<double> state;
};

struct LegTrajectory {
  std::size_t leg;
  Generator generator;
  double duration;
  std::vector<TrajectorySample> samples;
};

struct FlowResult {
  FlowStatus status = FlowStatus::ok;
  std::size_t dim = 0;
  /// State after the last completed leg (or at the failure point).
  std::vector<double> final_state;
  std::vector<LegTrajectory> legs;
  std::optional<std::size_t> failed_leg;
  std::optional<std::size_t> failed_landmark;
  std::string message;
  std::size_t steps = 0;

  bool ok() const { return status == FlowStatus::ok; }
  /// Throws std::logic_error unless ok().
  LandmarkConfig final_config() const;
};

/// Applies the generator pair for a fixed d to landmark states. Reusable
/// across schedules; holds no per-run state.
class FlowEngine {
 public:
  explicit FlowEngine(std::size_t d, FlowOptions opts = {});

  std::size_t dim() const { return d_; }
  const FlowOptions& options() const { return opts_; }
  const CompiledField& field(Generator g) const { return g == Generator::x ? x_ : y_; }

  /// Runs the schedule on a landmark-major state of n = state.size() / d points.
  FlowResult run(const ControlSchedule& sched, std::span<const double> state) const;

  /// One leg of an arbitrary compiled field on a landmark-major state. On
  /// failure the failing landmark is returned through `failed_landmark`.
  FlowStatus advance(const CompiledField& f, double t, std::vector<double>& state,
                     std::vector<TrajectorySample>* samples, std::size_t& steps,
                     std::optional<std::size_t>& failed_landmark) const;

 private:
  FlowStatus closed_form(const CompiledField& f, double t, std::vector<double>& state,
                         std::vector<TrajectorySample>* samples,
                         std::optional<std::size_t>& failed_landmark) const;
  FlowStatus integrate(const CompiledField& f, double t, std::vector<double>& state,
                       std::vector<TrajectorySample>* samples, std::size_t& steps,
                       std::optional<std::size_t>& failed_landmark) const;

  std::size_t d_;
  FlowOptions opts_;
  CompiledField x_;
  CompiledField y_;
};

FlowResult flow_config(const ControlSchedule& sched, const LandmarkConfig& cfg, const FlowOptions& opts = {});

/// d = 1 only: true iff the final landmarks are in the same relative order as
/// `before`. Throws std::invalid_argument for d != 1 or a failed run.
bool order_preserved(const LandmarkConfig& before, const FlowResult& result);

}  // namespace landflow
