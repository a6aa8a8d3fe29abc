#include "aladin/reformulate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "aladin/errors.hpp"

namespace aladin {

SplitState SplitState::zeros(Eigen::Index n, Eigen::Index d_g) {
  SplitState s;
  s.x = Eigen::VectorXd::Zero(n);
  s.q = Eigen::VectorXd::Zero(d_g);
  s.m_copy = Eigen::VectorXd::Zero(d_g);
  s.beta = Eigen::VectorXd::Zero(n);
  s.p = Eigen::VectorXd::Zero(d_g);
  s.n_slack = Eigen::VectorXd::Zero(d_g);
  s.lambda = Eigen::VectorXd::Zero(n + 2 * d_g);
  s.kappa = Eigen::VectorXd::Zero(d_g);
  return s;
}

Eigen::VectorXd SplitState::alpha() const {
  Eigen::VectorXd a(n() + 2 * d_g());
  a << x, q, m_copy;
  return a;
}

Eigen::VectorXd SplitState::gamma() const {
  Eigen::VectorXd g(2 * d_g());
  g << p, n_slack;
  return g;
}

void SplitState::set_alpha(const Eigen::Ref<const Eigen::VectorXd>& alpha) {
  x = alpha.head(n());
  q = alpha.segment(n(), d_g());
  m_copy = alpha.tail(d_g());
}

void SplitState::set_gamma(const Eigen::Ref<const Eigen::VectorXd>& gamma) {
  p = gamma.head(d_g());
  n_slack = gamma.tail(d_g());
}

bool SplitState::all_finite() const {
  return x.allFinite() && q.allFinite() && m_copy.allFinite() &&
         beta.allFinite() && p.allFinite() && n_slack.allFinite() &&
         lambda.allFinite() && kappa.allFinite();
}

CouplingMatrices build_coupling(Eigen::Index n, Eigen::Index d_g) {
  if (n < 1 || d_g < 1) {
    throw std::invalid_argument{"build_coupling: n and d_g must be ≥ 1"};
  }
  const Eigen::Index N = n + 2 * d_g;
  CouplingMatrices A;
  A.A1 = Eigen::MatrixXd::Identity(N, N);
  A.A2 = Eigen::MatrixXd::Zero(N, n);
  A.A2.topRows(n) = -Eigen::MatrixXd::Identity(n, n);
  A.A3 = Eigen::MatrixXd::Zero(N, 2 * d_g);
  A.A3.bottomRows(2 * d_g) = -Eigen::MatrixXd::Identity(2 * d_g, 2 * d_g);
  return A;
}

Eigen::VectorXd coupling_residual(
    const Eigen::Ref<const Eigen::VectorXd>& alpha,
    const Eigen::Ref<const Eigen::VectorXd>& beta,
    const Eigen::Ref<const Eigen::VectorXd>& gamma) {
  const Eigen::Index n = beta.size();
  Eigen::VectorXd r = alpha;
  r.head(n) -= beta;
  r.tail(gamma.size()) -= gamma;
  return r;
}

double eval_phi(const Eigen::Ref<const Eigen::VectorXd>& alpha,
                const Eigen::Ref<const Eigen::VectorXd>& gamma_ref,
                const MpccOracle& oracle, const SplitWeights& w) {
  const Eigen::Index n = oracle.n();
  const Eigen::Index dg = oracle.d_g();
  return oracle.eval_f(alpha.head(n)) +
         0.5 * w.wP * (alpha.segment(n, dg) - gamma_ref.head(dg)).squaredNorm() +
         0.5 * w.wM * (alpha.tail(dg) - gamma_ref.tail(dg)).squaredNorm();
}

double eval_varphi(const Eigen::Ref<const Eigen::VectorXd>& beta,
                   const std::vector<BoundSign>& bounds,
                   const SplitWeights& w) {
  double value = 0;
  for (Eigen::Index i = 0; i < beta.size(); ++i) {
    const int tau = orientation(bounds[i]);
    if (tau == 0) {
      continue;
    }
    const double arg = w.r + tau * beta(i);
    if (!(arg > 0)) {
      throw DomainError{"eval_varphi: barrier argument non-positive at " +
                            std::to_string(i),
                        i};
    }
    value -= w.mu * std::log(arg);
  }
  return value;
}

double eval_psi(const Eigen::Ref<const Eigen::VectorXd>& gamma,
                const SplitWeights& w) {
  double value = w.rho * gamma.sum();
  for (Eigen::Index i = 0; i < gamma.size(); ++i) {
    const double arg = w.r + gamma(i);
    if (!(arg > 0)) {
      throw DomainError{"eval_psi: barrier argument non-positive at " +
                            std::to_string(i),
                        i};
    }
    if (w.mu != 0) {
      value -= w.mu * std::log(arg);
    }
  }
  return value;
}

Eigen::VectorXd eval_local_equality(
    const Eigen::Ref<const Eigen::VectorXd>& alpha, const MpccOracle& oracle) {
  const Eigen::Index n = oracle.n();
  const Eigen::Index dg = oracle.d_g();
  return oracle.eval_g(alpha.head(n)) - alpha.segment(n, dg) + alpha.tail(dg);
}

Eigen::MatrixXd local_equality_jacobian(
    const Eigen::Ref<const Eigen::VectorXd>& alpha, const MpccOracle& oracle) {
  const Eigen::Index n = oracle.n();
  const Eigen::Index dg = oracle.d_g();
  Eigen::MatrixXd C(dg, n + 2 * dg);
  C << oracle.jac_g(alpha.head(n)), -Eigen::MatrixXd::Identity(dg, dg),
      Eigen::MatrixXd::Identity(dg, dg);
  return C;
}

}  // namespace aladin
