#include <landflow_cli/cli.hpp>

#include <landflow/io.hpp>

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace landflow;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "landflow");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("landflow_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const std::string kData = LANDFLOW_DATA_DIR;

}  // namespace

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"identities"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"certify", path("missing.json")}).code, cli::kExitUsage);
  spit(path("bad.json"), "{ not json");
  EXPECT_EQ(run({"certify", path("bad.json")}).code, cli::kExitUsage);
  EXPECT_EQ(run({"steer", path("bad.json")}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--version"}).code, cli::kExitOk);
}

TEST_F(CliTest, IdentitiesExitStatus) {
  const auto line = run({"identities", "--d", "1", "--out", path("id.json")});
  EXPECT_EQ(line.code, cli::kExitOk);
  EXPECT_NE(line.out.find("all identities hold"), std::string::npos);
  EXPECT_TRUE(json::parse(slurp(path("id.json")))["all_hold"].get<bool>());
  EXPECT_TRUE(fs::exists(path("id.json.manifest.json")));
  EXPECT_EQ(run({"identities", "--d", "3"}).code, cli::kExitFailure);
  EXPECT_EQ(run({"identities", "--d", "3", "--corrected"}).code, cli::kExitOk);
}

TEST_F(CliTest, CertifyWritesCertificateAndManifest) {
  const auto r = run({"certify", kData + "/config_n3_d2.json", "--out", path("cert.json")});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("rank 6/6"), std::string::npos);
  const auto cert = json::parse(slurp(path("cert.json")));
  EXPECT_TRUE(cert["success"].get<bool>());
  EXPECT_EQ(cert["achieved_rank"], 6);
  const auto manifest = json::parse(slurp(path("cert.json.manifest.json")));
  EXPECT_EQ(manifest["command"], "certify");
  EXPECT_EQ(manifest["outputs"].size(), 1u);
  EXPECT_EQ(manifest["inputs"].begin().value().get<std::string>().size(), 64u);
}

TEST_F(CliTest, CertifyDepthZeroSinglePointAndDeficientRank) {
  spit(path("one.json"), R"({"d": 1, "points": [[3]]})");
  EXPECT_EQ(run({"certify", path("one.json"), "--depth", "0", "--out", path("c1.json")}).code, cli::kExitOk);
  spit(path("three.json"), R"({"d": 1, "points": [[0], [1], [2]]})");
  EXPECT_EQ(run({"certify", path("three.json"), "--depth", "0", "--out", path("c3.json")}).code, cli::kExitFailure);
  EXPECT_FALSE(json::parse(slurp(path("c3.json")))["success"].get<bool>());
}

TEST_F(CliTest, SteerIdentityProblem) {
  spit(path("id.json"), R"({"source": {"d": 2, "points": [[0, 0], [1, 1]]},
                            "target": {"d": 2, "points": [[0, 0], [1, 1]]}})");
  const auto r = run({"steer", path("id.json"), "--out", path("s")});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  const auto sol = json::parse(slurp(path("s.solution.json")));
  EXPECT_TRUE(sol["schedule"]["legs"].empty());
  EXPECT_EQ(sol["residual"].get<double>(), 0.0);
}

TEST_F(CliTest, SteerRejectsOrderMismatch) {
  spit(path("swap.json"), R"({"source": {"d": 1, "points": [[0], [1]]},
                              "target": {"d": 1, "points": [[1], [0]]}})");
  const auto r = run({"steer", path("swap.json"), "--out", path("s")});
  EXPECT_EQ(r.code, cli::kExitFailure);
  EXPECT_NE(r.out.find("order"), std::string::npos);
  EXPECT_TRUE(json::parse(slurp(path("s.solution.json")))["rejected"].get<bool>());
}

TEST_F(CliTest, BundledSteeringExample) {
  const auto r = run({"steer", kData + "/steer_n3_d2.json", "--out", path("ex")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.out << r.err;
  const auto sol = json::parse(slurp(path("ex.solution.json")));
  EXPECT_TRUE(sol["converged"].get<bool>());
  EXPECT_LT(sol["residual"].get<double>(), 1e-6);

  // Last CSV rows hold the final configuration.
  std::istringstream csv(slurp(path("ex.trajectory.csv")));
  std::vector<std::string> rows;
  for (std::string line; std::getline(csv, line);) rows.push_back(line);
  const auto& final_state = sol["final_state"];
  const std::size_t n = final_state.size();
  ASSERT_GT(rows.size(), n);
  for (std::size_t i = 0; i < n; ++i) {
    std::istringstream row(rows[rows.size() - n + i]);
    std::vector<std::string> cells;
    for (std::string c; std::getline(row, c, ',');) cells.push_back(c);
    ASSERT_EQ(cells.size(), 6u);
    EXPECT_EQ(std::stoul(cells[3]), i);
    EXPECT_EQ(std::stod(cells[4]), final_state[i][0].get<double>());
    EXPECT_EQ(std::stod(cells[5]), final_state[i][1].get<double>());
  }

  const auto manifest = json::parse(slurp(path("ex.manifest.json")));
  EXPECT_EQ(manifest["seed"], 7);
  EXPECT_EQ(manifest["outputs"].size(), 2u);

  // Rerunning from the manifest's options reproduces the outputs byte for byte.
  const std::string first = slurp(path("ex.solution.json"));
  ASSERT_EQ(run({"steer", kData + "/steer_n3_d2.json", "--out", path("ex2")}).code, cli::kExitOk);
  EXPECT_EQ(slurp(path("ex2.solution.json")), first);
  EXPECT_EQ(slurp(path("ex2.trajectory.csv")), slurp(path("ex.trajectory.csv")));
}

TEST_F(CliTest, FlowReplaysSchedule) {
  spit(path("sched.json"), schedule_to_json(ControlSchedule(1, {{Generator::x, 0.5}, {Generator::y, 0.1}})));
  spit(path("cfg.json"), R"({"d": 1, "points": [[-1], [0], [1]]})");
  const auto r = run({"flow", path("sched.json"), path("cfg.json"), "--out", path("f")});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  const auto final_cfg = config_from_json(slurp(path("f.final.json")));
  EXPECT_EQ(final_cfg.size(), 3u);
  EXPECT_NEAR(final_cfg.point(1)[0], 0.5 / std::sqrt(1 - 2 * 0.25 * 0.1), 1e-14);

  spit(path("blow.json"), schedule_to_json(ControlSchedule(1, {{Generator::y, 10.0}})));
  EXPECT_EQ(run({"flow", path("blow.json"), path("cfg.json"), "--out", path("g")}).code, cli::kExitFailure);
  EXPECT_FALSE(fs::exists(path("g.final.json")));
  EXPECT_TRUE(fs::exists(path("g.trajectory.csv")));

  spit(path("plane.json"), R"({"d": 2, "points": [[0, 0]]})");
  EXPECT_EQ(run({"flow", path("sched.json"), path("plane.json"), "--out", path("h")}).code, cli::kExitUsage);
}
