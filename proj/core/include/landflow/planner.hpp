#pragma once
// Steering landmark configurations with alternating flows of the generator
// pair: shooting over leg durations with Levenberg-Marquardt.

#include <landflow/flow.hpp>
#include <landflow/landmark.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

namespace landflow {

inline constexpr std::size_t kMaxLegPairs = 64;

struct SteeringProblem {
  LandmarkConfig source;
  LandmarkConfig target;
  /// Number of (X, Y) leg pairs; 0 selects 2 n d.
  std::size_t legs = 0;
  /// Convergence threshold on the largest landmark error.
  double tol = 1e-6;
  double bound = 1e6;
  /// Levenberg-Marquardt iterations per restart.
  std::size_t max_iterations = 150;
  /// Random restarts per (leg count, waypoint) stage.
  std::size_t max_restarts = 6;
  std::uint64_t seed = 0;
  /// Allow escalation through 2, 4 and 8 straight-line waypoints.
  bool continuation = true;
  /// Allow doubling the leg count on failure, up to kMaxLegPairs.
  bool grow_legs = true;
  /// Threads for Jacobian columns; results do not depend on it.
  std::size_t workers = 1;
  FlowOptions flow{};
};

struct SteeringSolution {
  ControlSchedule schedule;
  /// max_i |phi(x_i) - y_i| from a forward simulation of `schedule`.
  double residual = 0.0;
  bool converged = false;
  /// Set when the problem was refused before optimization (d = 1 order mismatch).
  bool rejected = false;
  std::string message;
  std::size_t iterations = 0;
  std::size_t restarts = 0;
  /// Leg pairs in the final stage attempt.
  std::size_t legs = 0;
  /// Waypoints in the straight-line homotopy (1 means direct).
  std::size_t waypoints = 1;
  /// Landmark-major state reached by `schedule`.
  std::vector<double> final_state;
  /// Cost 1/2 |r|^2 after each accepted step of the winning run.
  std::vector<double> cost_history;
};

struct ResidualEval {
  /// phi(x_i) - y_i stacked landmark-major; penalty values on escape.
  std::vector<double> r;
  FlowStatus status = FlowStatus::ok;
  /// max_i |phi(x_i) - y_i| (infinity unless status is ok).
  double max_error = 0.0;
  std::vector<double> final_state;
};

ResidualEval residual(const ControlSchedule& sched, const SteeringProblem& prob);

SteeringSolution solve(const SteeringProblem& prob);

/// Uniform draws in [0, 1) from a stream keyed by (seed, stream ids).
class SeededStream {
 public:
  SeededStream(std::uint64_t seed, std::initializer_list<std::uint64_t> ids);
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace landflow
