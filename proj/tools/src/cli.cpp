#include <landflow_cli/cli.hpp>

#include <landflow/bracketgen.hpp>
#include <landflow/flow.hpp>
#include <landflow/identities.hpp>
#include <landflow/io.hpp>
#include <landflow/planner.hpp>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace landflow::cli {

namespace {

using nlohmann::json;

// Input problems (unreadable files, malformed content) map to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return hex.str();
}

std::size_t worker_count() {
  const char* env = std::getenv("LANDFLOW_WORKERS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) throw InputError("LANDFLOW_WORKERS must be a positive integer");
  return static_cast<std::size_t>(v);
}

class Manifest {
 public:
  Manifest(std::string command, json options) : command_(std::move(command)), options_(std::move(options)) {}

  void input(const std::string& path, const std::string& content) { inputs_[path] = sha256_hex(content); }

  void output(const std::string& path, const std::string& content) {
    write_file(path, content);
    outputs_[path] = sha256_hex(content);
  }

  void write(const std::string& path, std::optional<std::uint64_t> seed) const {
    json j{{"command", command_},
           {"options", options_},
           {"version", LANDFLOW_VERSION},
           {"inputs", inputs_},
           {"outputs", outputs_}};
    j["seed"] = seed ? json(*seed) : json(nullptr);
    write_file(path, canonical_json(j.dump()));
  }

 private:
  std::string command_;
  json options_;
  json inputs_ = json::object();
  json outputs_ = json::object();
};

// ---------------------------------------------------------------- identities

int cmd_identities(std::size_t d, bool corrected, const std::string& out_path, std::ostream& out) {
  const auto results = check_displayed_identities(d);
  bool all = true;
  json report = json::array();
  for (const auto& r : results) {
    const bool pass = corrected ? r.corrected_holds : r.holds;
    all = all && pass;
    out << (r.holds ? "PASS " : "FAIL ") << r.label << "  " << r.statement << "  [" << r.instances << " instance"
        << (r.instances == 1 ? "" : "s") << ", " << r.failures << " failed]\n";
    if (!r.holds) out << "     computed | expected: " << r.detail << "\n";
    if (r.erratum) {
      out << "     erratum: " << *r.erratum << "; corrected form " << (r.corrected_holds ? "holds" : "fails") << "\n";
    }
    json item{{"label", r.label},     {"statement", r.statement},       {"instances", r.instances},
              {"failures", r.failures}, {"holds", r.holds},             {"corrected_holds", r.corrected_holds},
              {"detail", r.detail}};
    item["erratum"] = r.erratum ? json(*r.erratum) : json(nullptr);
    report.push_back(std::move(item));
  }
  out << (all ? "all identities hold" : "some identities fail") << (corrected ? " (corrected forms)" : "") << "\n";
  if (!out_path.empty()) {
    Manifest m("identities", json{{"d", d}, {"corrected", corrected}, {"out", out_path}});
    m.output(out_path, canonical_json(json{{"d", d}, {"identities", report}, {"all_hold", all}}.dump()));
    m.write(out_path + ".manifest.json", std::nullopt);
  }
  return all ? kExitOk : kExitFailure;
}

// ------------------------------------------------------------------ certify

int cmd_certify(const std::string& config_path, int depth, std::optional<int> degree, const std::string& out_path,
                std::ostream& out) {
  const std::string text = read_file(config_path);
  LandmarkConfig cfg = [&] {
    try {
      return config_from_json(text);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }();
  ClosureOptions opts;
  opts.max_depth = depth;
  opts.max_degree = degree;
  const RankCertificate cert = closure_search(cfg.dim(), cfg, opts);
  out << "rank " << cert.achieved_rank << "/" << cert.target_rank << (cert.success ? " (full)" : " (deficient)")
      << ", " << cert.expressions.size() << " brackets, " << cert.candidates_examined << " candidates\n";

  Manifest m("certify", json{{"config", config_path},
                             {"depth", cert.max_depth},
                             {"degree", cert.max_degree},
                             {"out", out_path}});
  m.input(config_path, text);
  m.output(out_path, certificate_to_json(cert));
  m.write(out_path + ".manifest.json", std::nullopt);
  return cert.success ? kExitOk : kExitFailure;
}

// -------------------------------------------------------------------- steer

int cmd_steer(const std::string& problem_path, const std::string& prefix, std::optional<double> tol,
              std::optional<std::uint64_t> seed, std::optional<std::size_t> legs, std::ostream& out) {
  const std::string text = read_file(problem_path);
  SteeringProblem prob = [&] {
    try {
      return problem_from_json(text);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }();
  if (tol) prob.tol = *tol;
  if (seed) prob.seed = *seed;
  if (legs) prob.legs = *legs;
  prob.workers = worker_count();
  if (!(prob.tol > 0)) throw InputError("--tol must be positive");

  const SteeringSolution sol = solve(prob);

  FlowOptions fo = prob.flow;
  fo.bound = prob.bound;
  fo.closed_form_samples = 16;
  const FlowResult traj = flow_config(sol.schedule, prob.source, fo);

  json options = json::parse(problem_to_json(prob));
  options["problem"] = problem_path;
  options["out"] = prefix;
  Manifest m("steer", options);
  m.input(problem_path, text);
  m.output(prefix + ".solution.json", solution_to_json(sol));
  m.output(prefix + ".trajectory.csv", trajectory_csv(traj));
  m.write(prefix + ".manifest.json", prob.seed);

  if (sol.rejected) {
    out << sol.message << "\n";
    return kExitFailure;
  }
  out << (sol.converged ? "converged" : "not converged") << ": residual " << format_double(sol.residual) << ", "
      << sol.schedule.size() << " legs, " << sol.iterations << " iterations, " << sol.restarts << " restarts, "
      << sol.waypoints << " waypoint" << (sol.waypoints == 1 ? "" : "s") << "\n";
  return sol.converged ? kExitOk : kExitFailure;
}

// --------------------------------------------------------------------- flow

int cmd_flow(const std::string& schedule_path, const std::string& config_path, const std::string& prefix,
             std::size_t samples, std::ostream& out) {
  const std::string sched_text = read_file(schedule_path);
  const std::string cfg_text = read_file(config_path);
  ControlSchedule sched;
  LandmarkConfig cfg = [&] {
    try {
      sched = schedule_from_json(sched_text);
      return config_from_json(cfg_text);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }();
  if (sched.dim() != cfg.dim()) throw InputError("schedule and configuration dimensions differ");

  FlowOptions fo;
  fo.closed_form_samples = samples;
  const FlowResult r = flow_config(sched, cfg, fo);

  Manifest m("flow", json{{"schedule", schedule_path}, {"config", config_path}, {"out", prefix}, {"samples", samples}});
  m.input(schedule_path, sched_text);
  m.input(config_path, cfg_text);
  m.output(prefix + ".trajectory.csv", trajectory_csv(r));
  if (r.ok()) m.output(prefix + ".final.json", config_to_json(r.final_config()));
  m.write(prefix + ".manifest.json", std::nullopt);

  out << status_name(r.status);
  if (!r.ok()) out << ": " << r.message;
  out << "\n";
  return r.ok() ? kExitOk : kExitFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Landmark controllability toolkit: bracket identities, rank certificates and steering"};
  app.set_version_flag("--version", LANDFLOW_VERSION);
  app.require_subcommand(1);

  std::size_t d = 1;
  bool corrected = false;
  std::string out_path;
  auto* identities = app.add_subcommand("identities", "Check the bracket identities used by the controllability proofs");
  identities->add_option("--d", d, "Dimension (1, 2, or >= 3)")->required()->check(CLI::PositiveNumber);
  identities->add_flag("--corrected", corrected, "Judge identities with a known erratum by their corrected form");
  identities->add_option("--out", out_path, "Write a JSON report");

  std::string config_path;
  int depth = kDefaultMaxDepth;
  std::optional<int> degree;
  auto* certify = app.add_subcommand("certify", "Certify the bracket-generating condition at a configuration");
  certify->add_option("config", config_path, "Configuration JSON")->required();
  certify->add_option("--depth", depth, "Maximum bracket depth")->check(CLI::NonNegativeNumber);
  certify->add_option("--degree", degree, "Maximum field degree (default 2n+3)")->check(CLI::NonNegativeNumber);
  certify->add_option("--out", out_path, "Certificate path")->default_val("certificate.json");

  std::string problem_path;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> legs;
  auto* steer = app.add_subcommand("steer", "Find a schedule of X and Y flows steering source onto target");
  steer->add_option("problem", problem_path, "Problem JSON")->required();
  steer->add_option("--tol", tol, "Convergence tolerance on the largest landmark error");
  steer->add_option("--seed", seed, "Random seed");
  steer->add_option("--legs", legs, "Number of (X, Y) leg pairs (0 selects 2 n d)");
  steer->add_option("--out", out_path, "Output prefix")->default_val("steer");

  std::string schedule_path;
  std::size_t samples = 16;
  auto* flow = app.add_subcommand("flow", "Replay a schedule on a configuration and export the trajectory");
  flow->add_option("schedule", schedule_path, "Schedule JSON")->required();
  flow->add_option("config", config_path, "Configuration JSON")->required();
  flow->add_option("--samples", samples, "Extra samples per closed-form leg");
  flow->add_option("--out", out_path, "Output prefix")->default_val("flow");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*identities) return cmd_identities(d, corrected, out_path, out);
    if (*certify) return cmd_certify(config_path, depth, degree, out_path, out);
    if (*steer) return cmd_steer(problem_path, out_path, tol, seed, legs, out);
    if (*flow) return cmd_flow(schedule_path, config_path, out_path, samples, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace landflow::cli
