#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "aladin/numkernel.hpp"
#include "aladin/problem.hpp"
#include "aladin/reformulate.hpp"
#include "aladin/subsolvers.hpp"

namespace aladin {

/// Tunables of ALADIN-β and of the centralized baselines.
struct AladinConfig {
  double mu0 = 10.0;
  double mu_shrink = 0.2;
  double mu_min = 1e-16;
  double rho0 = 10.0;
  double rho_grow = 4.0;
  double rho_max = 1e12;

  double r = 1e-6;
  double wP = 1.0;
  double wM = 1.0;
  double sigma1 = 20.0;
  double sigma2 = 3.0;
  double sigma3 = 3.0;
  double theta = 1.0;

  /// Threshold on ‖g(x)‖∞.
  double tol_comp = 1e-12;
  /// Threshold on ‖A1α̂ + A2β̂ + A3γ̂‖∞.
  double tol_cons = 1e-8;
  /// Threshold on the ∞-norm of the combined primal step.
  double tol_step = 1e-10;
  int max_outer = 200;

  InnerConfig inner;
  RegConfig reg;
  std::optional<Eigen::VectorXd> reference_solution;

  /// Solve the three subproblems concurrently.
  bool parallel = true;

  /// @throws std::invalid_argument naming the first violated invariant.
  void validate() const;

  SplitWeights weights(double mu, double rho) const {
    return {wP, wM, r, mu, rho};
  }
  ProxWeights prox() const { return {sigma1, sigma2, sigma3}; }
};

/// Per-iteration telemetry.
struct IterationRecord {
  /// 1-based outer iteration index.
  int k = 0;
  double mu = 0;
  double rho = 0;
  double objective = 0;
  double comp_residual = 0;
  /// Pre-QP coupling residual; empty for centralized solvers.
  std::optional<double> consensus_residual;
  /// ‖g(x) − q + m_copy‖∞; empty for centralized solvers.
  std::optional<double> local_eq_residual;
  double step_norm = 0;
  std::optional<double> x_error;
  int inner_iters = 0;
  /// Seconds since the start of the run.
  double wall_time_s = 0;
  /// Primal iterate after the iteration.
  Eigen::VectorXd x;
};

enum class SolveStatus {
  Converged,
  MaxIterations,
  InnerSolverFailure,
  LinearSolverSingular,
  Diverged,
};

std::string_view to_string(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::MaxIterations;
  SplitState state;
  std::vector<IterationRecord> records;
  /// Failure description; empty on success.
  std::string message;
  /// Iteration at which a failure was raised, 0 if none.
  int failure_iteration = 0;
};

/// Intermediate quantities of one ALADIN-β iteration, for inspection.
struct IterationDetail {
  int k;
  const SplitState& previous;
  const SubproblemSolution& hats;
  const Sensitivities& sensitivities;
  SplitWeights weights;
  ProxWeights prox;
};

/// Optional observers invoked synchronously by the outer loop.
struct SolveHooks {
  std::function<void(const IterationRecord&)> on_record;
  std::function<void(const IterationDetail&)> on_iteration;
};

struct ConsensusQpSolution {
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;
  Eigen::VectorXd gamma;
  /// Multiplier of the coupling constraint.
  Eigen::VectorXd lambda_qp;
  /// Multiplier of the linearized local equality.
  Eigen::VectorXd nu_local;
  double shift = 0;
};

/**
 * Solves the consensus QP
 *
 *   min ½‖Δ‖²_H + g1ᵀΔα + g2ᵀΔβ + g3ᵀΔγ
 *   s.t. CΔα = 0,  A1α⁺ + A2β⁺ + A3γ⁺ = 0,
 *
 * with Δ = (α⁺ − α̂, β⁺ − β̂, γ⁺ − γ̂) and H = blockdiag(H1, H2, H3),
 * through one factorization of its KKT matrix.
 *
 * @throws LinearSolverSingular if the KKT matrix stays singular after the
 *   regularization retries.
 */
ConsensusQpSolution solve_consensus_qp(const SubproblemSolution& hats,
                                       const Sensitivities& sens,
                                       const Eigen::MatrixXd& C,
                                       const CouplingMatrices& coupling,
                                       const RegConfig& reg);

/// λ + θ(λ_qp − λ).
Eigen::VectorXd dual_update(const Eigen::VectorXd& lambda,
                            const Eigen::VectorXd& lambda_qp, double theta);

struct Parameters {
  double mu;
  double rho;
};

/// (max(μ·mu_shrink, mu_min), min(ρ·rho_grow, rho_max)).
Parameters update_parameters(double mu, double rho, const AladinConfig& cfg);

/**
 * Converged iff every threshold is met, Diverged iff any tracked quantity is
 * non-finite, MaxIterations iff k ≥ max_outer, empty otherwise. Missing
 * consensus fields count as satisfied.
 */
std::optional<SolveStatus> check_termination(const IterationRecord& record,
                                             const AladinConfig& cfg);

/**
 * Runs ALADIN-β from x0.
 *
 * Failures of the subsolvers or the linear algebra end the run with the
 * matching status; the records up to the failing iteration are kept.
 *
 * @throws std::invalid_argument if x0 is not finite, has the wrong size, or
 *   lies outside the relaxed barrier domain.
 */
SolveResult run_aladin_beta(const MpccOracle& oracle, const Eigen::VectorXd& x0,
                            const AladinConfig& cfg, const SolveHooks& hooks = {});

/// Initial split iterate: β = x0, p = max(g, 0) + 0.1, n = max(−g, 0) + 0.1,
/// q = p, m_copy = n, zero duals.
SplitState initial_state(const MpccOracle& oracle, const Eigen::VectorXd& x0);

/// Throws std::invalid_argument unless x0 is finite, of size n, and strictly
/// inside r + τx > 0.
void check_start(const MpccOracle& oracle, const Eigen::VectorXd& x0, double r);

}  // namespace aladin
