#include "aladin/subsolvers.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <string>

#include "aladin/errors.hpp"
#include "aladin/newton.hpp"

namespace aladin {

Sub1Result solve_sub1(const SplitState& state, const MpccOracle& oracle,
                      const SplitWeights& w, const ProxWeights& prox,
                      const InnerConfig& inner) {
  const Eigen::Index n = oracle.n();
  const double s1 = prox.sigma1;
  const double a = w.wP + s1;
  const double b = w.wM + s1;
  const double wt = a * b / (a + b);

  const Eigen::VectorXd lx = state.lambda_x();
  const Eigen::VectorXd cq =
      (w.wP * state.p + s1 * state.q - state.lambda_q()) / a;
  const Eigen::VectorXd cm =
      (w.wM * state.n_slack + s1 * state.m_copy - state.lambda_m()) / b;
  const Eigen::VectorXd s0 = cq - cm;
  const Eigen::VectorXd& x_prev = state.x;

  auto kappa_at = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return wt * (oracle.eval_g(x) - s0);
  };

  SmoothObjective R;
  R.value = [&](const Eigen::VectorXd& x) {
    return oracle.eval_f(x) + lx.dot(x) + 0.5 * s1 * (x - x_prev).squaredNorm() +
           0.5 * wt * (oracle.eval_g(x) - s0).squaredNorm();
  };
  R.gradient = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return oracle.grad_f(x) + lx + s1 * (x - x_prev) +
           oracle.jac_g(x).transpose() * kappa_at(x);
  };
  R.hessian = [&](const Eigen::VectorXd& x) -> Eigen::MatrixXd {
    const Eigen::MatrixXd J = oracle.jac_g(x);
    Eigen::MatrixXd H = oracle.hess_f(x) + oracle.hess_gl(x, kappa_at(x)) +
                        wt * J.transpose() * J;
    H.diagonal().array() += s1;
    return H;
  };
  R.gradient_scale = [&](const Eigen::VectorXd& x) {
    const Eigen::VectorXd jk = oracle.jac_g(x).transpose() * kappa_at(x);
    return 1.0 + std::max({inf_norm(oracle.grad_f(x)), inf_norm(lx), inf_norm(jk)});
  };

  NewtonResult nr = newton_minimize(R, x_prev, inner.tol, inner.max_iter);
  if (!nr.x.allFinite()) {
    throw DomainError{"solve_sub1: non-finite iterate", -1};
  }
  if (!nr.converged) {
    throw InnerSolverFailure{
        "solve_sub1: no convergence in " + std::to_string(nr.iterations) +
            " iterations (residual " + std::to_string(nr.residual) + ")",
        nr.iterations, nr.residual};
  }

  Sub1Result out;
  out.kappa_hat = kappa_at(nr.x);
  out.alpha_hat.resize(n + 2 * s0.size());
  out.alpha_hat << nr.x, cq + out.kappa_hat / a, cm - out.kappa_hat / b;
  out.iterations = nr.iterations;
  out.residual = nr.residual;
  return out;
}

BarrierArgmin coordinate_barrier_argmin(double c_lin, double sigma,
                                        double s_prev, double mu, double r,
                                        int orientation) {
  const double tau = orientation >= 0 ? 1.0 : -1.0;
  const double b = tau * (c_lin - sigma * s_prev) - sigma * r;

  double u;
  if (mu == 0) {
    u = -b / sigma;
    if (!(u > 0)) {
      throw DomainError{"coordinate_barrier_min: minimizer outside domain", -1};
    }
    return {tau * (u - r), u};
  }

  const double root = std::sqrt(b * b + 4 * sigma * mu);
  u = b < 0 ? (root - b) / (2 * sigma) : 2 * mu / (b + root);

  // Newton polish on τh'(s) written in u = r + τs.
  const double phi = -mu / u + b + sigma * u;
  const double dphi = mu / (u * u) + sigma;
  const double polished = u - phi / dphi;
  if (polished > 0 && std::isfinite(polished)) {
    u = polished;
  }
  return {tau * (u - r), u};
}

double coordinate_barrier_min(double c_lin, double sigma, double s_prev,
                              double mu, double r, int orientation) {
  return coordinate_barrier_argmin(c_lin, sigma, s_prev, mu, r, orientation)
      .value;
}

BarrierBlock solve_sub2(const SplitState& state,
                        const std::vector<BoundSign>& bounds,
                        const SplitWeights& w, const ProxWeights& prox) {
  const Eigen::Index n = state.n();
  BarrierBlock out{Eigen::VectorXd(n), Eigen::VectorXd::Zero(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lx = state.lambda(i);
    const int tau = orientation(bounds[i]);
    if (tau == 0) {
      out.value(i) = state.beta(i) + lx / prox.sigma2;
      continue;
    }
    const auto sol =
        coordinate_barrier_argmin(-lx, prox.sigma2, state.beta(i), w.mu, w.r, tau);
    out.value(i) = sol.value;
    out.argument(i) = sol.argument;
  }
  return out;
}

BarrierBlock solve_sub3(const SplitState& state, const SplitWeights& w,
                        const ProxWeights& prox) {
  const Eigen::Index dg = state.d_g();
  const Eigen::Index n = state.n();
  BarrierBlock out{Eigen::VectorXd(2 * dg), Eigen::VectorXd(2 * dg)};
  const Eigen::VectorXd gamma = state.gamma();
  for (Eigen::Index i = 0; i < 2 * dg; ++i) {
    const double c_lin = w.rho - state.lambda(n + i);
    const auto sol =
        coordinate_barrier_argmin(c_lin, prox.sigma3, gamma(i), w.mu, w.r, 1);
    out.value(i) = sol.value;
    out.argument(i) = sol.argument;
  }
  return out;
}

SubproblemSolution solve_subproblems(const SplitState& state,
                                     const MpccOracle& oracle,
                                     const SplitWeights& w,
                                     const ProxWeights& prox,
                                     const InnerConfig& inner, bool parallel) {
  Sub1Result s1;
  BarrierBlock s2;
  BarrierBlock s3;
  if (parallel) {
    auto f1 = std::async(std::launch::async, [&] {
      return solve_sub1(state, oracle, w, prox, inner);
    });
    auto f2 = std::async(std::launch::async, [&] {
      return solve_sub2(state, oracle.bounds(), w, prox);
    });
    s3 = solve_sub3(state, w, prox);
    s2 = f2.get();
    s1 = f1.get();
  } else {
    s1 = solve_sub1(state, oracle, w, prox, inner);
    s2 = solve_sub2(state, oracle.bounds(), w, prox);
    s3 = solve_sub3(state, w, prox);
  }

  SubproblemSolution out;
  out.alpha_hat = std::move(s1.alpha_hat);
  out.kappa_hat = std::move(s1.kappa_hat);
  out.inner_iterations = s1.iterations;
  out.inner_residual = s1.residual;
  out.beta_hat = std::move(s2.value);
  out.beta_argument = std::move(s2.argument);
  out.gamma_hat = std::move(s3.value);
  out.gamma_argument = std::move(s3.argument);
  return out;
}

namespace {

double barrier_curvature(double mu, double argument, double floor,
                         Eigen::Index index) {
  if (!(argument > 0) || !std::isfinite(argument)) {
    throw DomainError{"barrier argument non-positive at " +
                          std::to_string(index),
                      index};
  }
  return std::max(mu / (argument * argument), floor);
}

}  // namespace

Sensitivities assemble_sensitivities(const SplitState& prev,
                                     const SubproblemSolution& hats,
                                     const MpccOracle& oracle,
                                     const SplitWeights& w,
                                     const ProxWeights& prox,
                                     const RegConfig& reg) {
  const Eigen::Index n = oracle.n();
  const Eigen::Index dg = oracle.d_g();
  const Eigen::MatrixXd C = local_equality_jacobian(hats.alpha_hat, oracle);

  Sensitivities s;
  s.g1 = prox.sigma1 * (prev.alpha() - hats.alpha_hat) - prev.lambda -
         C.transpose() * hats.kappa_hat;
  s.g2 = prox.sigma2 * (prev.beta - hats.beta_hat) + prev.lambda_x();
  s.g3 = prox.sigma3 * (prev.gamma() - hats.gamma_hat) + prev.lambda.tail(2 * dg);

  const Eigen::VectorXd x_hat = hats.alpha_hat.head(n);
  Eigen::MatrixXd H1 = Eigen::MatrixXd::Zero(n + 2 * dg, n + 2 * dg);
  H1.topLeftCorner(n, n) =
      oracle.hess_f(x_hat) + oracle.hess_gl(x_hat, hats.kappa_hat);
  H1.diagonal().segment(n, dg).setConstant(w.wP);
  H1.diagonal().tail(dg).setConstant(w.wM);
  auto lifted = regularize_pd(H1, reg);
  s.H1 = std::move(lifted.matrix);
  s.H1_shift = lifted.shift;

  const auto& bounds = oracle.bounds();
  s.H2.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    s.H2(i) = bounds[i] == BoundSign::Free
                  ? reg.eps_pd
                  : barrier_curvature(w.mu, hats.beta_argument(i), reg.eps_pd, i);
  }
  s.H3.resize(2 * dg);
  for (Eigen::Index i = 0; i < 2 * dg; ++i) {
    s.H3(i) = barrier_curvature(w.mu, hats.gamma_argument(i), reg.eps_pd, i);
  }
  return s;
}

}  // namespace aladin
