#pragma once

#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "aladin/coordinator.hpp"
#include "aladin/problem.hpp"

namespace aladin::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSolverFailure = 1;
inline constexpr int kExitUsage = 2;

enum class SolverKind { AladinBeta, PbPerStep, PbPerBarrier, Vanilla };

/// "aladin_beta", "pb_per_step", "pb_per_barrier", "vanilla".
std::string_view solver_name(SolverKind kind);
std::optional<SolverKind> parse_solver(std::string_view name);
/// Comma-separated list of valid solver names.
std::string valid_solver_names();

SolveResult run_solver(SolverKind kind, const MpccOracle& oracle,
                       const Eigen::VectorXd& x0, const AladinConfig& cfg,
                       const SolveHooks& hooks = {});

/// Configuration sources shared by all subcommands.
struct ConfigSource {
  std::optional<std::string> config_path;
  /// "key=value" overrides applied after the config file.
  std::vector<std::string> overrides;
};

struct SolveOptions {
  /// QpccProblem JSON file; the canonical problem is used when empty.
  std::optional<std::string> problem_path;
  int pairs = 1;
  std::string solver = "aladin_beta";
  /// Start point; defaults to τᵢ per coordinate (1, −1 or 0).
  std::optional<std::vector<double>> x0;
  ConfigSource config;
  /// JSON result path; standard output when empty.
  std::optional<std::string> out;
};

struct BenchOptions {
  int pairs = 10;
  /// All four solvers when empty.
  std::vector<std::string> solvers;
  ConfigSource config;
  std::string out_dir = ".";
};

struct TraceOptions {
  std::vector<double> start{1.0, 1.0};
  int iterations = 100;
  ConfigSource config;
  std::string out = "trace.csv";
};

/// Writes {status, final_x, objective, comp_residual, iterations, wall_time}.
/// Returns 0 iff the run converged, 1 on solver failure, 2 on usage errors.
int cmd_solve(const SolveOptions& opts, std::ostream& log);

/**
 * Runs each solver on the canonical problem from x0 = e and writes
 * <out_dir>/<solver>.csv. Returns 0 once every CSV is written, regardless of
 * solver status; 2 on usage errors.
 */
int cmd_bench(const BenchOptions& opts, std::ostream& log);

/// ALADIN-β on the 2-D canonical problem with max_outer = iterations.
int cmd_trace(const TraceOptions& opts, std::ostream& log);

}  // namespace aladin::app
