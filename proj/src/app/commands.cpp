#include "aladin/app/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "aladin/app/config_io.hpp"
#include "aladin/app/csv.hpp"
#include "aladin/baselines.hpp"
#include "aladin/numkernel.hpp"

namespace aladin::app {

namespace {

constexpr SolverKind kAllSolvers[] = {SolverKind::AladinBeta, SolverKind::PbPerStep,
                                      SolverKind::PbPerBarrier, SolverKind::Vanilla};

/// Raised for user errors that map to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

AladinConfig load_config(const ConfigSource& src) {
  AladinConfig cfg;
  try {
    if (src.config_path) {
      apply_config_file(cfg, *src.config_path);
    }
    for (const auto& assignment : src.overrides) {
      apply_override(cfg, assignment);
    }
    cfg.validate();
  } catch (const ConfigError& e) {
    throw UsageError{e.what()};
  } catch (const std::invalid_argument& e) {
    throw UsageError{std::string{"invalid configuration: "} + e.what()};
  }
  return cfg;
}

SolverKind require_solver(std::string_view name) {
  if (auto kind = parse_solver(name)) {
    return *kind;
  }
  throw UsageError{"unknown solver '" + std::string{name} +
                   "'; valid solvers: " + valid_solver_names()};
}

std::unique_ptr<QpccProblem> load_problem(const std::optional<std::string>& path,
                                          int pairs) {
  try {
    if (path) {
      return std::make_unique<QpccProblem>(load_qpcc_json_file(*path));
    }
    return std::make_unique<QpccProblem>(make_canonical(pairs));
  } catch (const ProblemFormatError& e) {
    throw UsageError{e.what()};
  } catch (const std::invalid_argument& e) {
    throw UsageError{e.what()};
  }
}

Eigen::VectorXd default_start(const MpccOracle& oracle) {
  Eigen::VectorXd x0(oracle.n());
  for (Eigen::Index i = 0; i < x0.size(); ++i) {
    x0(i) = orientation(oracle.bounds()[i]);
  }
  return x0;
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

SolveResult run_checked(SolverKind kind, const MpccOracle& oracle,
                        const Eigen::VectorXd& x0, const AladinConfig& cfg) {
  try {
    return run_solver(kind, oracle, x0, cfg);
  } catch (const std::invalid_argument& e) {
    throw UsageError{e.what()};
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out{path, std::ios::binary};
  if (!out) {
    throw UsageError{"cannot open output file '" + path + "'"};
  }
  return out;
}

template <typename Body>
int guarded(std::ostream& log, Body&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace

std::string_view solver_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::AladinBeta:
      return "aladin_beta";
    case SolverKind::PbPerStep:
      return "pb_per_step";
    case SolverKind::PbPerBarrier:
      return "pb_per_barrier";
    case SolverKind::Vanilla:
      return "vanilla";
  }
  return "";
}

std::optional<SolverKind> parse_solver(std::string_view name) {
  for (SolverKind kind : kAllSolvers) {
    if (solver_name(kind) == name) {
      return kind;
    }
  }
  return std::nullopt;
}

std::string valid_solver_names() {
  std::string out;
  for (SolverKind kind : kAllSolvers) {
    if (!out.empty()) {
      out += ", ";
    }
    out += solver_name(kind);
  }
  return out;
}

SolveResult run_solver(SolverKind kind, const MpccOracle& oracle,
                       const Eigen::VectorXd& x0, const AladinConfig& cfg,
                       const SolveHooks& hooks) {
  switch (kind) {
    case SolverKind::AladinBeta:
      return run_aladin_beta(oracle, x0, cfg, hooks);
    case SolverKind::PbPerStep:
      return run_penalty_barrier_newton(oracle, x0, cfg, BaselineSchedule::PerStep,
                                        hooks);
    case SolverKind::PbPerBarrier:
      return run_penalty_barrier_newton(oracle, x0, cfg,
                                        BaselineSchedule::PerBarrierSolve, hooks);
    case SolverKind::Vanilla:
      return run_vanilla_barrier(oracle, x0, cfg, hooks);
  }
  throw std::invalid_argument{"run_solver: unknown solver"};
}

int cmd_solve(const SolveOptions& opts, std::ostream& log) {
  return guarded(log, [&] {
    const SolverKind kind = require_solver(opts.solver);
    const AladinConfig cfg = load_config(opts.config);
    const auto problem = load_problem(opts.problem_path, opts.pairs);
    const Eigen::VectorXd x0 = opts.x0 ? to_vector(*opts.x0) : default_start(*problem);

    const SolveResult result = run_checked(kind, *problem, x0, cfg);
    const Eigen::VectorXd& x = result.state.x;
    nlohmann::json doc = {
        {"solver", solver_name(kind)},
        {"status", to_string(result.status)},
        {"final_x", std::vector<double>(x.data(), x.data() + x.size())},
        {"objective", problem->eval_f(x)},
        {"comp_residual", inf_norm(problem->eval_g(x))},
        {"iterations", result.records.size()},
        {"wall_time", result.records.empty() ? 0.0 : result.records.back().wall_time_s},
    };
    if (!result.message.empty()) {
      doc["message"] = result.message;
    }
    if (opts.out) {
      open_output(*opts.out) << doc.dump(2) << '\n';
    } else {
      std::cout << doc.dump(2) << '\n';
    }
    if (result.status != SolveStatus::Converged) {
      log << solver_name(kind) << ": " << to_string(result.status);
      if (!result.message.empty()) {
        log << " (" << result.message << ")";
      }
      log << '\n';
      return kExitSolverFailure;
    }
    return kExitOk;
  });
}

int cmd_bench(const BenchOptions& opts, std::ostream& log) {
  return guarded(log, [&] {
    std::vector<SolverKind> kinds;
    for (const auto& name : opts.solvers) {
      kinds.push_back(require_solver(name));
    }
    if (kinds.empty()) {
      kinds.assign(std::begin(kAllSolvers), std::end(kAllSolvers));
    }
    const AladinConfig cfg = load_config(opts.config);
    const auto problem = load_problem(std::nullopt, opts.pairs);
    const Eigen::VectorXd x0 = Eigen::VectorXd::Ones(problem->n());

    std::error_code ec;
    std::filesystem::create_directories(opts.out_dir, ec);
    if (ec) {
      throw UsageError{"cannot create output directory '" + opts.out_dir + "'"};
    }

    for (SolverKind kind : kinds) {
      const SolveResult result = run_checked(kind, *problem, x0, cfg);
      const std::optional<Eigen::VectorXd> reference =
          result.records.empty()
              ? std::nullopt
              : std::optional{pattern_reference(result.records.back().x)};
      const auto path =
          std::filesystem::path{opts.out_dir} / (std::string{solver_name(kind)} + ".csv");
      auto out = open_output(path.string());
      write_bench_csv(out, result.records, reference);
      log << solver_name(kind) << ": " << to_string(result.status) << " after "
          << result.records.size() << " iterations";
      if (!result.message.empty()) {
        log << " (" << result.message << ")";
      }
      log << '\n';
    }
    return kExitOk;
  });
}

int cmd_trace(const TraceOptions& opts, std::ostream& log) {
  return guarded(log, [&] {
    if (opts.start.size() != 2) {
      throw UsageError{"trace start point must have two coordinates"};
    }
    if (opts.iterations < 1) {
      throw UsageError{"trace iteration count must be positive"};
    }
    AladinConfig cfg = load_config(opts.config);
    cfg.max_outer = opts.iterations;
    const auto problem = load_problem(std::nullopt, 1);
    const Eigen::VectorXd x0 = to_vector(opts.start);

    const SolveResult result = run_checked(SolverKind::AladinBeta, *problem, x0, cfg);
    auto out = open_output(opts.out);
    write_trace_csv(out, *problem, x0, result.records);
    if (result.status != SolveStatus::Converged) {
      log << "aladin_beta: " << to_string(result.status);
      if (!result.message.empty()) {
        log << " (" << result.message << ")";
      }
      log << '\n';
      return kExitSolverFailure;
    }
    return kExitOk;
  });
}

}  // namespace aladin::app
