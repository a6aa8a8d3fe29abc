#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aladin/app/commands.hpp"

namespace {

void add_config_flags(CLI::App& cmd, aladin::app::ConfigSource& src) {
  cmd.add_option("--config", src.config_path, "JSON file mirroring AladinConfig");
  cmd.add_option("--set", src.overrides, "Override a config field, key=value")
      ->take_all();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace aladin::app;

  CLI::App app{"ALADIN-beta solver and benchmark driver"};
  app.require_subcommand(1);

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one problem instance");
  solve_cmd->add_option("--problem", solve.problem_path, "QpccProblem JSON file");
  solve_cmd->add_option("--pairs", solve.pairs, "Pairs of the canonical problem")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--solver", solve.solver, "One of: " + valid_solver_names());
  solve_cmd->add_option("--x0", solve.x0, "Start point")->delimiter(',');
  solve_cmd->add_option("--out", solve.out, "JSON result path");
  add_config_flags(*solve_cmd, solve.config);

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run solvers on the canonical problem");
  bench_cmd->add_option("--pairs", bench.pairs, "Pairs of the canonical problem")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--solver", bench.solvers, "Solvers to run (default: all)")
      ->delimiter(',');
  bench_cmd->add_option("--out", bench.out_dir, "Output directory");
  add_config_flags(*bench_cmd, bench.config);

  TraceOptions trace;
  auto* trace_cmd = app.add_subcommand("trace", "Trace the 2-D canonical iterates");
  trace_cmd->add_option("--start", trace.start, "Start point x1,x2")->delimiter(',');
  trace_cmd->add_option("--iterations", trace.iterations, "Outer iteration budget");
  trace_cmd->add_option("--out", trace.out, "CSV path");
  add_config_flags(*trace_cmd, trace.config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*solve_cmd) {
    return cmd_solve(solve, std::cerr);
  }
  if (*bench_cmd) {
    return cmd_bench(bench, std::cerr);
  }
  return cmd_trace(trace, std::cerr);
}
