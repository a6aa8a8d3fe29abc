#pragma once

#include <Eigen/Core>

#include "aladin/coordinator.hpp"
#include "aladin/problem.hpp"

namespace aladin {

/// When the centralized penalty-barrier method updates (μ, ρ).
enum class BaselineSchedule {
  /// After every Newton step.
  PerStep,
  /// Once the current barrier problem is solved to kBarrierSolveTol or the
  /// step falls below tol_step.
  PerBarrierSolve,
};

/// Inner tolerance at which PerBarrierSolve and the vanilla method move to
/// the next barrier parameter.
inline constexpr double kBarrierSolveTol = 1e-8;

/// Optimal relaxed slacks (r + p, r + n) of one penalized constraint value.
struct SlackPair {
  double v;
  double u;
};

/**
 * Minimizes ρ(p + n) − μ(ln(r + p) + ln(r + n)) subject to p − n = g and
 * returns v = r + p and u = r + n without cancellation.
 */
SlackPair eliminate_slacks(double g, double mu, double rho);

/**
 * Value of the slack-eliminated penalty-barrier term
 * V(g) = ρ(v + u − 2r) − μ(ln v + ln u).
 */
double penalty_barrier_value(double g, double mu, double rho, double r);

/// V′(g) = ρ − μ/v, the penalty multiplier.
double penalty_barrier_slope(double g, double mu, double rho);

/// V″(g) > 0.
double penalty_barrier_curvature(double g, double mu, double rho);

/**
 * Centralized Newton method on the ℓ1 penalty-barrier reformulation
 *
 *   min f(x) − μΣ ln(r + τx) + ρ(p + n)ᵀe − μΣ(ln(r + p) + ln(r + n))
 *   s.t. g(x) − p + n = 0.
 *
 * The slacks are eliminated in closed form; each outer step is one
 * inertia-corrected Newton step with Armijo backtracking on the reduced
 * objective. Converged is reported only once μ ≤ max(mu_min, tol_comp).
 * Records carry no consensus fields.
 */
SolveResult run_penalty_barrier_newton(const MpccOracle& oracle,
                                       const Eigen::VectorXd& x0,
                                       const AladinConfig& cfg,
                                       BaselineSchedule schedule,
                                       const SolveHooks& hooks = {});

/**
 * Primal-dual log-barrier Newton method on the original problem with g(x) = 0
 * as a hard equality. Uses fraction-to-boundary 0.995 and Armijo on the
 * squared KKT residual; μ follows the configured schedule once the residual
 * drops below kBarrierSolveTol. As for the penalty-barrier method, Converged
 * waits for μ ≤ max(mu_min, tol_comp). Failure statuses are regular outcomes.
 */
SolveResult run_vanilla_barrier(const MpccOracle& oracle,
                                const Eigen::VectorXd& x0,
                                const AladinConfig& cfg,
                                const SolveHooks& hooks = {});

}  // namespace aladin
