#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "aladin/app/commands.hpp"
#include "aladin/app/config_io.hpp"
#include "aladin/app/csv.hpp"

namespace fs = std::filesystem;

namespace aladin::app {
namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("aladin_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream in{path, std::ios::binary};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in{text};
  for (std::string line; std::getline(in, line);) {
    out.push_back(line);
  }
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in{line};
  while (std::getline(in, cell, ',')) {
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') {
    out.emplace_back();
  }
  return out;
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd =
      std::string{ALADIN_CLI_PATH} + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Solvers, NamesRoundTrip) {
  for (auto kind : {SolverKind::AladinBeta, SolverKind::PbPerStep, SolverKind::PbPerBarrier,
                    SolverKind::Vanilla}) {
    EXPECT_EQ(parse_solver(solver_name(kind)), kind);
  }
  EXPECT_EQ(parse_solver("ipopt"), std::nullopt);
  EXPECT_EQ(valid_solver_names(), "aladin_beta, pb_per_step, pb_per_barrier, vanilla");
}

TEST(Config, OverridesAndFiles) {
  AladinConfig cfg;
  apply_override(cfg, "mu0=3.5");
  apply_override(cfg, "inner.max_iter=7");
  apply_override(cfg, "parallel=false");
  EXPECT_EQ(cfg.mu0, 3.5);
  EXPECT_EQ(cfg.inner.max_iter, 7);
  EXPECT_FALSE(cfg.parallel);
  EXPECT_THROW(apply_override(cfg, "nonsense=1"), ConfigError);
  EXPECT_THROW(apply_override(cfg, "mu0"), ConfigError);
  EXPECT_THROW(apply_override(cfg, "mu0=\"x\""), ConfigError);

  AladinConfig other;
  apply_config_json(other, config_to_json(cfg));
  EXPECT_EQ(config_to_json(other), config_to_json(cfg));
}

TEST(Csv, NumberFormatRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17}) {
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
}

TEST(Csv, PatternReference) {
  Eigen::VectorXd x(4);
  x << 0.9, 0.2, 0.1, 0.8;
  Eigen::VectorXd ref(4);
  ref << 1, 0, 0, 1;
  EXPECT_EQ(pattern_reference(x), ref);
}

TEST(Csv, BenchRowsWithEmptyOptionalFields) {
  IterationRecord rec;
  rec.k = 1;
  rec.mu = 10;
  rec.rho = 10;
  rec.x = Eigen::Vector2d{1, 0};
  std::ostringstream out;
  write_bench_csv(out, {rec}, std::nullopt);
  const auto rows = lines(out.str());
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], kBenchHeader);
  const auto cells = split(rows[1]);
  ASSERT_EQ(cells.size(), 11u);
  EXPECT_EQ(cells[0], "1");
  EXPECT_EQ(cells[5], "");
  EXPECT_EQ(cells[6], "");
  EXPECT_EQ(cells[8], "");
}

TEST(Bench, WritesOneCsvPerSolver) {
  const fs::path dir = scratch_dir("bench");
  BenchOptions opts;
  opts.out_dir = dir.string();
  opts.config.overrides = {"max_outer=60"};
  std::ostringstream log;
  ASSERT_EQ(cmd_bench(opts, log), kExitOk) << log.str();
  for (const char* name : {"aladin_beta", "pb_per_step", "pb_per_barrier", "vanilla"}) {
    const auto rows = lines(read_file(dir / (std::string{name} + ".csv")));
    ASSERT_GE(rows.size(), 2u) << name;
    EXPECT_EQ(rows[0], kBenchHeader);
    int prev = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const int iter = std::stoi(split(rows[i])[0]);
      EXPECT_GT(iter, prev) << name;
      prev = iter;
    }
  }
}

TEST(Bench, UnknownSolverIsUsageError) {
  BenchOptions opts;
  opts.solvers = {"aladin_beta", "ipopt"};
  opts.out_dir = scratch_dir("bench_bad").string();
  std::ostringstream log;
  EXPECT_EQ(cmd_bench(opts, log), kExitUsage);
  EXPECT_NE(log.str().find("pb_per_barrier"), std::string::npos);
}

TEST(Trace, StartRowAndConvergence) {
  const fs::path dir = scratch_dir("trace");
  TraceOptions opts;
  opts.out = (dir / "trace.csv").string();
  std::ostringstream log;
  ASSERT_EQ(cmd_trace(opts, log), kExitOk) << log.str();
  const auto rows = lines(read_file(opts.out));
  ASSERT_GE(rows.size(), 3u);
  EXPECT_EQ(rows[0], kTraceHeader);
  EXPECT_EQ(split(rows[1])[0], "0");
  EXPECT_EQ(std::stod(split(rows[1])[1]), 1.0);
  const auto last = split(rows.back());
  const Eigen::Vector2d x{std::stod(last[1]), std::stod(last[2])};
  EXPECT_LE(std::min((x - Eigen::Vector2d{1, 0}).norm(), (x - Eigen::Vector2d{0, 1}).norm()),
            1e-6);
}

TEST(Trace, OffDiagonalStartsStayFinite) {
  const fs::path dir = scratch_dir("trace_off");
  TraceOptions opts;
  opts.start = {0.5, 2.0};
  opts.out = (dir / "trace.csv").string();
  std::ostringstream log;
  ASSERT_EQ(cmd_trace(opts, log), kExitOk) << log.str();
  const auto last = split(lines(read_file(opts.out)).back());
  EXPECT_LE(std::stod(last[4]), 1e-8);

  opts.start = {1.0, 0.01};
  ASSERT_EQ(cmd_trace(opts, log), kExitOk) << log.str();
  const auto axis = split(lines(read_file(opts.out)).back());
  EXPECT_NEAR(std::stod(axis[1]), 1.0, 1e-6);
  EXPECT_NEAR(std::stod(axis[2]), 0.0, 1e-6);
}

TEST(Trace, RejectsBadStart) {
  TraceOptions opts;
  opts.start = {1.0};
  std::ostringstream log;
  EXPECT_EQ(cmd_trace(opts, log), kExitUsage);
}

TEST(Binary, SolveCanonicalWritesResult) {
  const fs::path dir = scratch_dir("solve");
  const fs::path out = dir / "result.json";
  ASSERT_EQ(run_cli("solve --pairs 1 --solver aladin_beta --out " + out.string(), dir / "log"),
            0)
      << read_file(dir / "log");
  const auto doc = nlohmann::json::parse(read_file(out));
  EXPECT_EQ(doc["status"], "Converged");
  EXPECT_NEAR(doc["objective"].get<double>(), 0.5, 1e-8);
  EXPECT_EQ(doc["final_x"].size(), 2u);
}

TEST(Binary, UnknownSolverExitsWithUsage) {
  const fs::path dir = scratch_dir("solve_bad");
  EXPECT_EQ(run_cli("solve --solver ipopt", dir / "log"), 2);
  EXPECT_NE(read_file(dir / "log").find("aladin_beta"), std::string::npos);
}

TEST(Binary, MalformedProblemReportsLocation) {
  const fs::path dir = scratch_dir("solve_json");
  std::ofstream{dir / "bad.json"} << "{\"Q\": [[1]], \"c\": [";
  EXPECT_EQ(run_cli("solve --problem " + (dir / "bad.json").string(), dir / "log"), 2);
  EXPECT_NE(read_file(dir / "log").find("byte"), std::string::npos);
}

TEST(Binary, SolverFailureExitsWithOne) {
  const fs::path dir = scratch_dir("solve_fail");
  EXPECT_EQ(run_cli("solve --pairs 1 --set max_outer=2", dir / "log"), 1);
}

TEST(Binary, MissingSubcommandIsUsageError) {
  const fs::path dir = scratch_dir("noargs");
  EXPECT_EQ(run_cli("", dir / "log"), 2);
}

}  // namespace
}  // namespace aladin::app
