#include <landflow/io.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace landflow {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void emit(const json& j, int level, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * (level + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * level), ' ');
  switch (j.type()) {
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        break;
      }
      // Keep floats recognizable as floats when read back.
      std::string text = format_double(v);
      if (text.find_first_of(".e") == std::string::npos) text += ".0";
      out += text;
      break;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); });
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        emit(e, level + 1, out);
      }
      out += flat ? "]" : "\n" + close + "]";
      break;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        emit(it.value(), level + 1, out);
      }
      out += "\n" + close + "}";
      break;
    }
    default:
      out += j.dump();
  }
}

std::string write(const json& j) {
  std::string out;
  emit(j, 0, out);
  out += '\n';
  return out;
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& obj, const char* key, const char* what) {
  if (!obj.is_object() || !obj.contains(key)) throw FormatError(std::string(what) + ": missing \"" + key + "\"");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw FormatError(std::string(what) + ": \"" + key + "\" has the wrong type");
  }
}

std::size_t positive_size(const json& obj, const char* key, const char* what) {
  const json& v = obj.contains(key) ? obj.at(key) : json();
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw FormatError(std::string(what) + ": \"" + key + "\" must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

LandmarkConfig config_from(const json& j) {
  if (!j.is_object()) throw FormatError("config: expected an object");
  const std::size_t d = positive_size(j, "d", "config");
  if (d == 0) throw FormatError("config: \"d\" must be positive");
  if (!j.contains("points") || !j.at("points").is_array() || j.at("points").empty()) {
    throw FormatError("config: \"points\" must be a non-empty array");
  }
  bool exact = true;
  for (const auto& p : j.at("points")) {
    if (!p.is_array() || p.size() != d) throw FormatError("config: every point needs exactly d coordinates");
    for (const auto& c : p) {
      if (c.is_number_float()) {
        exact = false;
      } else if (!c.is_number_integer() && !c.is_string()) {
        throw FormatError("config: coordinates must be numbers or \"p/q\" strings");
      }
    }
  }
  try {
    if (exact) {
      std::vector<std::vector<Rational>> pts;
      for (const auto& p : j.at("points")) {
        std::vector<Rational> q;
        for (const auto& c : p) q.push_back(parse_rational(c.is_string() ? c.get<std::string>() : c.dump()));
        pts.push_back(std::move(q));
      }
      return LandmarkConfig::exact(d, std::move(pts));
    }
    std::vector<std::vector<double>> pts;
    for (const auto& p : j.at("points")) {
      std::vector<double> q;
      for (const auto& c : p) q.push_back(c.is_string() ? parse_rational(c.get<std::string>()).get_d() : c.get<double>());
      pts.push_back(std::move(q));
    }
    return LandmarkConfig::floating(d, std::move(pts));
  } catch (const FormatError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
}

json config_json(const LandmarkConfig& cfg) {
  json pts = json::array();
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    json p = json::array();
    for (std::size_t k = 0; k < cfg.dim(); ++k) {
      if (cfg.is_exact()) {
        const Rational& q = cfg.exact_point(i)[k];
        if (q.get_den() == 1 && q.get_num().fits_slong_p()) {
          p.push_back(q.get_num().get_si());
        } else {
          p.push_back(q.get_str());
        }
      } else {
        p.push_back(cfg.point(i)[k]);
      }
    }
    pts.push_back(std::move(p));
  }
  return json{{"d", cfg.dim()}, {"points", std::move(pts)}};
}

json schedule_json(const ControlSchedule& s) {
  json legs = json::array();
  for (const auto& leg : s.legs()) legs.push_back(json::array({generator_name(leg.generator), leg.duration}));
  return json{{"d", s.dim()}, {"legs", std::move(legs)}};
}

ControlSchedule schedule_from(const json& j) {
  if (!j.is_object()) throw FormatError("schedule: expected an object");
  const std::size_t d = positive_size(j, "d", "schedule");
  if (d == 0) throw FormatError("schedule: \"d\" must be positive");
  if (!j.contains("legs") || !j.at("legs").is_array()) throw FormatError("schedule: \"legs\" must be an array");
  ControlSchedule s(d);
  for (const auto& leg : j.at("legs")) {
    if (!leg.is_array() || leg.size() != 2 || !leg[0].is_string() || !leg[1].is_number()) {
      throw FormatError("schedule: each leg is [\"X\" or \"Y\", duration]");
    }
    try {
      s.push_back(parse_generator(leg[0].get<std::string>()), leg[1].get<double>());
    } catch (const std::invalid_argument& e) {
      throw FormatError(std::string("schedule: ") + e.what());
    }
  }
  return s;
}

json state_points(const std::vector<double>& flat, std::size_t d) {
  json pts = json::array();
  for (std::size_t off = 0; off + d <= flat.size(); off += d) {
    pts.push_back(json(std::vector<double>(flat.begin() + static_cast<std::ptrdiff_t>(off),
                                           flat.begin() + static_cast<std::ptrdiff_t>(off + d))));
  }
  return pts;
}

}  // namespace

std::string canonical_json(std::string_view json_text) { return write(parse(json_text)); }

LandmarkConfig config_from_json(std::string_view text) { return config_from(parse(text)); }

std::string config_to_json(const LandmarkConfig& cfg) { return write(config_json(cfg)); }

ControlSchedule schedule_from_json(std::string_view text) { return schedule_from(parse(text)); }

std::string schedule_to_json(const ControlSchedule& sched) { return write(schedule_json(sched)); }

SteeringProblem problem_from_json(std::string_view text) {
  const json j = parse(text);
  if (!j.is_object()) throw FormatError("problem: expected an object");
  if (!j.contains("source") || !j.contains("target")) throw FormatError("problem: needs \"source\" and \"target\"");
  SteeringProblem p{config_from(j.at("source")), config_from(j.at("target"))};
  if (p.source.dim() != p.target.dim()) throw FormatError("problem: source and target dimensions differ");
  if (p.source.size() != p.target.size()) throw FormatError("problem: source and target landmark counts differ");
  if (j.contains("legs")) p.legs = positive_size(j, "legs", "problem");
  if (j.contains("tol")) {
    p.tol = field<double>(j, "tol", "problem");
    if (!(p.tol > 0)) throw FormatError("problem: \"tol\" must be positive");
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer()) throw FormatError("problem: \"seed\" must be an integer");
    p.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("bound")) {
    p.bound = field<double>(j, "bound", "problem");
    if (!(p.bound > 0)) throw FormatError("problem: \"bound\" must be positive");
  }
  if (j.contains("max_iterations")) p.max_iterations = positive_size(j, "max_iterations", "problem");
  if (j.contains("max_restarts")) p.max_restarts = positive_size(j, "max_restarts", "problem");
  if (j.contains("continuation")) p.continuation = field<bool>(j, "continuation", "problem");
  return p;
}

std::string problem_to_json(const SteeringProblem& prob) {
  return write(json{{"source", config_json(prob.source)},
                    {"target", config_json(prob.target)},
                    {"legs", prob.legs},
                    {"tol", prob.tol},
                    {"seed", prob.seed},
                    {"bound", prob.bound},
                    {"max_iterations", prob.max_iterations},
                    {"max_restarts", prob.max_restarts},
                    {"continuation", prob.continuation}});
}

std::string certificate_to_json(const RankCertificate& cert) {
  json exprs = json::array();
  for (const auto& e : cert.expressions) {
    exprs.push_back(json{{"prefix", e.to_prefix()}, {"depth", e.depth()}, {"field", e.value().to_string()}});
  }
  json rows = json::array();
  const LiftedEvaluation& m = cert.matrix;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m.is_exact()) {
        row.push_back(m.exact_matrix()(r, c).get_str());
      } else {
        row.push_back(m.matrix()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
      }
    }
    rows.push_back(std::move(row));
  }
  return write(json{{"config", config_json(cert.config)},
                    {"expressions", std::move(exprs)},
                    {"matrix", std::move(rows)},
                    {"exact", m.is_exact()},
                    {"achieved_rank", cert.achieved_rank},
                    {"target_rank", cert.target_rank},
                    {"success", cert.success},
                    {"max_depth", cert.max_depth},
                    {"max_degree", cert.max_degree},
                    {"candidates_examined", cert.candidates_examined}});
}

std::string solution_to_json(const SteeringSolution& sol) {
  const std::size_t d = sol.schedule.dim();
  return write(json{{"schedule", schedule_json(sol.schedule)},
                    {"residual", sol.residual},
                    {"converged", sol.converged},
                    {"rejected", sol.rejected},
                    {"message", sol.message},
                    {"iterations", sol.iterations},
                    {"restarts", sol.restarts},
                    {"legs", sol.legs},
                    {"waypoints", sol.waypoints},
                    {"final_state", state_points(sol.final_state, d)}});
}

std::string trajectory_csv(const FlowResult& result) {
  std::ostringstream out;
  out << "leg,generator,time,landmark";
  for (std::size_t k = 0; k < result.dim; ++k) out << ",x" << (k + 1);
  out << '\n';
  for (const auto& leg : result.legs) {
    for (const auto& s : leg.samples) {
      for (std::size_t i = 0; i * result.dim < s.state.size(); ++i) {
        out << leg.leg << ',' << generator_name(leg.generator) << ',' << format_double(s.time) << ',' << i;
        for (std::size_t k = 0; k < result.dim; ++k) out << ',' << format_double(s.state[i * result.dim + k]);
        out << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace landflow
