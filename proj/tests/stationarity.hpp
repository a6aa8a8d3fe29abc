#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Core>

#include "aladin/coordinator.hpp"

namespace aladin::test {

/// Largest entrywise |a − b| / max(1, |b|, terms).
inline double relative_gap(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                           const Eigen::ArrayXd& terms) {
  return ((a - b).array().abs() / b.array().abs().max(terms).max(1.0)).maxCoeff();
}

inline double relative_gap(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return relative_gap(a, b, Eigen::ArrayXd::Zero(b.size()));
}

/**
 * Worst relative mismatch between the sensitivities g1, g2, g3 of one
 * iteration and the gradients of φ(·, γ⁻), varphi and ψ evaluated directly
 * at the subproblem solutions. Barrier gradients ρ − μ/u are compared
 * relative to their largest term max(ρ, μ/u). ψ′ uses the stored barrier
 * argument u; the gap is infinite unless u > 0 agrees with r + γ̂ to roundoff.
 */
inline double stationarity_gap(const IterationDetail& it, const MpccOracle& oracle) {
  const SplitState& prev = it.previous;
  const SubproblemSolution& hats = it.hats;
  const SplitWeights& w = it.weights;
  const Eigen::Index n = prev.n();
  const Eigen::Index d = prev.d_g();

  Eigen::VectorXd d_phi(n + 2 * d);
  d_phi << oracle.grad_f(hats.alpha_hat.head(n)),
      w.wP * (hats.alpha_hat.segment(n, d) - prev.p),
      w.wM * (hats.alpha_hat.tail(d) - prev.n_slack);

  Eigen::VectorXd d_varphi = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int tau = orientation(oracle.bounds()[static_cast<std::size_t>(i)]);
    if (tau != 0) {
      d_varphi(i) = -w.mu * tau / (w.r + tau * hats.beta_hat(i));
    }
  }

  const Eigen::ArrayXd u = hats.gamma_argument.array();
  const Eigen::ArrayXd slack = (u - (w.r + hats.gamma_hat.array())).abs() /
                               (4 * std::numeric_limits<double>::epsilon() *
                                hats.gamma_hat.array().abs().max(w.r));
  if (!(u > 0).all() || !(slack <= 1).all()) {
    return std::numeric_limits<double>::infinity();
  }
  const Eigen::ArrayXd barrier = w.mu / u;
  const Eigen::VectorXd d_psi = (w.rho - barrier).matrix();

  return std::max({relative_gap(it.sensitivities.g1, d_phi),
                   relative_gap(it.sensitivities.g2, d_varphi),
                   relative_gap(it.sensitivities.g3, d_psi, barrier.max(w.rho))});
}

}  // namespace aladin::test
