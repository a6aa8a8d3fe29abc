#pragma once

#include <Eigen/Core>

#include "aladin/numkernel.hpp"
#include "aladin/problem.hpp"
#include "aladin/reformulate.hpp"

namespace aladin {

/// Proximal scalings Σᵢ = σᵢI of the three subproblems.
struct ProxWeights {
  double sigma1 = 10.0;
  double sigma2 = 10.0;
  double sigma3 = 10.0;
};

/// Inner Newton settings for the first subproblem.
struct InnerConfig {
  double tol = 1e-12;
  int max_iter = 50;
};

/// Result of the first subproblem.
struct Sub1Result {
  Eigen::VectorXd alpha_hat;
  Eigen::VectorXd kappa_hat;
  int iterations = 0;
  double residual = 0;
};

/**
 * Solves
 *
 *   min φ(α, γ⁻) + λᵀA1α + (σ₁/2)‖α − α⁻‖²  s.t.  g(x) − q + m_copy = 0.
 *
 * q, m_copy and κ are eliminated in closed form, leaving an unconstrained
 * problem in x that is minimized by modified Newton. The returned point
 * satisfies the KKT conditions with scaled stationarity residual ≤ tol and
 * exact local equality.
 *
 * @throws InnerSolverFailure after inner.max_iter steps.
 */
Sub1Result solve_sub1(const SplitState& state, const MpccOracle& oracle,
                      const SplitWeights& w, const ProxWeights& prox,
                      const InnerConfig& inner);

/// Minimizer ŝ of a 1-D relaxed barrier problem with its barrier argument.
struct BarrierArgmin {
  double value;
  /// r + τŝ, computed without cancellation.
  double argument;
};

/**
 * Minimizes h(s) = −μ ln(r + τs) + c_lin·s + (σ/2)(s − s_prev)² over
 * r + τs > 0 via the stable root of the stationarity quadratic followed by
 * one Newton polish.
 *
 * @param orientation τ ∈ {+1, −1}.
 * @throws DomainError if μ = 0 and the unconstrained minimizer is outside
 *   the domain.
 */
BarrierArgmin coordinate_barrier_argmin(double c_lin, double sigma,
                                        double s_prev, double mu, double r,
                                        int orientation);

/// Value part of coordinate_barrier_argmin.
double coordinate_barrier_min(double c_lin, double sigma, double s_prev,
                              double mu, double r, int orientation);

/// Per-coordinate solution of a separable barrier subproblem.
struct BarrierBlock {
  Eigen::VectorXd value;
  /// Barrier arguments r + τs; 0 for Free coordinates.
  Eigen::VectorXd argument;
};

/// min varphi(β) + λᵀA2β + (σ₂/2)‖β − β⁻‖², coordinatewise.
BarrierBlock solve_sub2(const SplitState& state,
                        const std::vector<BoundSign>& bounds,
                        const SplitWeights& w, const ProxWeights& prox);

/// min ψ(γ) + λᵀA3γ + (σ₃/2)‖γ − γ⁻‖², coordinatewise.
BarrierBlock solve_sub3(const SplitState& state, const SplitWeights& w,
                        const ProxWeights& prox);

/// Hats of the three subproblems of one iteration.
struct SubproblemSolution {
  Eigen::VectorXd alpha_hat;
  Eigen::VectorXd beta_hat;
  Eigen::VectorXd gamma_hat;
  Eigen::VectorXd kappa_hat;
  Eigen::VectorXd beta_argument;
  Eigen::VectorXd gamma_argument;
  int inner_iterations = 0;
  double inner_residual = 0;
};

/**
 * Runs the three subproblems, concurrently when parallel is set. The
 * results do not depend on the execution mode.
 */
SubproblemSolution solve_subproblems(const SplitState& state,
                                     const MpccOracle& oracle,
                                     const SplitWeights& w,
                                     const ProxWeights& prox,
                                     const InnerConfig& inner, bool parallel);

/// Local gradients and Hessians passed to the consensus QP.
struct Sensitivities {
  Eigen::VectorXd g1;
  Eigen::VectorXd g2;
  Eigen::VectorXd g3;
  Eigen::MatrixXd H1;
  Eigen::VectorXd H2;
  Eigen::VectorXd H3;
  double H1_shift = 0;
};

/**
 * g1 = σ₁(α⁻ − α̂) − λ − Cᵀκ̂,  g2 = σ₂(β⁻ − β̂) + λ_x,
 * g3 = σ₃(γ⁻ − γ̂) + (λ_q, λ_m);
 * H1 = blockdiag(∇²f + ∇²(κ̂ᵀg), wP·I, wM·I) lifted to eps_pd,
 * H2, H3 the barrier curvatures μ/(r + τs)² floored at eps_pd.
 */
Sensitivities assemble_sensitivities(const SplitState& prev,
                                     const SubproblemSolution& hats,
                                     const MpccOracle& oracle,
                                     const SplitWeights& w,
                                     const ProxWeights& prox,
                                     const RegConfig& reg);

}  // namespace aladin
