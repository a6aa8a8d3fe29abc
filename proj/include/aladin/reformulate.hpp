#pragma once

#include <vector>

#include <Eigen/Core>

#include "aladin/problem.hpp"

namespace aladin {

/**
 * Full iterate of the split reformulation.
 *
 * α = (x, q, m_copy) carries the original variables together with copies of
 * the penalty slacks, β is the barrier replica of x, and γ = (p, n_slack)
 * are the penalty slacks. λ is the coupling dual, κ the dual of the local
 * equality g(x) − q + m_copy = 0.
 */
struct SplitState {
  Eigen::VectorXd x;
  Eigen::VectorXd q;
  Eigen::VectorXd m_copy;
  Eigen::VectorXd beta;
  Eigen::VectorXd p;
  Eigen::VectorXd n_slack;
  Eigen::VectorXd lambda;
  Eigen::VectorXd kappa;

  static SplitState zeros(Eigen::Index n, Eigen::Index d_g);

  Eigen::Index n() const { return x.size(); }
  Eigen::Index d_g() const { return q.size(); }

  Eigen::VectorXd alpha() const;
  Eigen::VectorXd gamma() const;
  void set_alpha(const Eigen::Ref<const Eigen::VectorXd>& alpha);
  void set_gamma(const Eigen::Ref<const Eigen::VectorXd>& gamma);

  /// Coupling dual blocks (λ_x, λ_q, λ_m).
  auto lambda_x() const { return lambda.head(n()); }
  auto lambda_q() const { return lambda.segment(n(), d_g()); }
  auto lambda_m() const { return lambda.tail(d_g()); }

  bool all_finite() const;
};

/// Coupling A1α + A2β + A3γ = 0 encoding x = β, q = p, m_copy = n_slack.
struct CouplingMatrices {
  Eigen::MatrixXd A1;
  Eigen::MatrixXd A2;
  Eigen::MatrixXd A3;
};

/// Weights of the split objective pieces.
struct SplitWeights {
  double wP = 1.0;
  double wM = 1.0;
  double r = 1.0;
  double mu = 10.0;
  double rho = 10.0;
};

CouplingMatrices build_coupling(Eigen::Index n, Eigen::Index d_g);

/// A1α + A2β + A3γ evaluated without forming the matrices.
Eigen::VectorXd coupling_residual(const Eigen::Ref<const Eigen::VectorXd>& alpha,
                                  const Eigen::Ref<const Eigen::VectorXd>& beta,
                                  const Eigen::Ref<const Eigen::VectorXd>& gamma);

/// f(x) + ½wP‖q − p‖² + ½wM‖m_copy − n_slack‖² with (p, n_slack) = γ_ref.
double eval_phi(const Eigen::Ref<const Eigen::VectorXd>& alpha,
                const Eigen::Ref<const Eigen::VectorXd>& gamma_ref,
                const MpccOracle& oracle, const SplitWeights& w);

/**
 * Relaxed log-barrier on β: −μ Σ ln(r + τᵢβᵢ) over bounded coordinates,
 * τᵢ = orientation(bounds[i]).
 *
 * @throws DomainError naming the first coordinate with r + τβ ≤ 0.
 */
double eval_varphi(const Eigen::Ref<const Eigen::VectorXd>& beta,
                   const std::vector<BoundSign>& bounds,
                   const SplitWeights& w);

/**
 * ρ(p + n)ᵀe − μ Σ (ln(r + pᵢ) + ln(r + nᵢ)) with γ = (p, n).
 *
 * @throws DomainError naming the first coordinate with a non-positive
 *   argument.
 */
double eval_psi(const Eigen::Ref<const Eigen::VectorXd>& gamma,
                const SplitWeights& w);

/// g(x) − q + m_copy.
Eigen::VectorXd eval_local_equality(
    const Eigen::Ref<const Eigen::VectorXd>& alpha, const MpccOracle& oracle);

/// C = [∂g/∂x, −I, I], a d_g × (n + 2d_g) matrix.
Eigen::MatrixXd local_equality_jacobian(
    const Eigen::Ref<const Eigen::VectorXd>& alpha, const MpccOracle& oracle);

}  // namespace aladin
