#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "aladin/coordinator.hpp"
#include "aladin/problem.hpp"

namespace aladin::app {

/// Header of bench CSVs.
inline constexpr std::string_view kBenchHeader =
    "iter,mu,rho,objective,comp_residual,consensus_residual,local_eq_residual,"
    "step_norm,x_error,inner_iters,wall_time_s";

/// Header of trace CSVs.
inline constexpr std::string_view kTraceHeader = "iter,x1,x2,objective,comp_residual";

/// Shortest round-trip text of a double ("%.17g").
std::string format_number(double value);

/**
 * Nearest per-pair minimizer of the canonical problem: pair i becomes (1, 0)
 * if x̂ᵢ ≥ x̃ᵢ and (0, 1) otherwise.
 */
Eigen::VectorXd pattern_reference(const Eigen::VectorXd& x);

/**
 * One row per record. x_error is ‖x − reference‖₂ when a reference is given,
 * otherwise the record's own x_error; absent values are written empty.
 */
void write_bench_csv(std::ostream& out, const std::vector<IterationRecord>& records,
                     const std::optional<Eigen::VectorXd>& reference);

/// Row 0 is the start point, then one row per record.
void write_trace_csv(std::ostream& out, const MpccOracle& oracle,
                     const Eigen::VectorXd& x0,
                     const std::vector<IterationRecord>& records);

}  // namespace aladin::app
