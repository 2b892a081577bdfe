#pragma once
// JSON and CSV formats for configurations, schedules, problems, certificates
// and solutions. Output is deterministic: sorted keys, two-space indentation,
// doubles printed with 17 significant digits.

#include <landflow/bracketgen.hpp>
#include <landflow/flow.hpp>
#include <landflow/landmark.hpp>
#include <landflow/planner.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace landflow {

/// Malformed or schema-violating input.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "%.17g".
std::string format_double(double v);

/// Re-emits any JSON document in the canonical layout.
std::string canonical_json(std::string_view json_text);

/// {"d": 2, "points": [[0, "1/2"], [1, 0]]}. Coordinates that are all JSON
/// integers or "p/q" strings give an exact configuration; any other number
/// makes the whole configuration floating.
LandmarkConfig config_from_json(std::string_view text);
std::string config_to_json(const LandmarkConfig& cfg);

/// {"d": 2, "legs": [["X", 0.5], ["Y", -1.25]]}.
ControlSchedule schedule_from_json(std::string_view text);
std::string schedule_to_json(const ControlSchedule& sched);

/// {"source": cfg, "target": cfg, "legs": int, "tol": real, "seed": int}, plus
/// optional "bound", "max_iterations", "max_restarts", "continuation".
SteeringProblem problem_from_json(std::string_view text);
std::string problem_to_json(const SteeringProblem& prob);

std::string certificate_to_json(const RankCertificate& cert);

std::string solution_to_json(const SteeringSolution& sol);

/// Header "leg,generator,time,landmark,x1,...,xd"; one row per sample and landmark.
std::string trajectory_csv(const FlowResult& result);

}  // namespace landflow
