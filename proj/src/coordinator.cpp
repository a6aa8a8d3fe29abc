#include "aladin/coordinator.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "aladin/errors.hpp"

namespace aladin {

void AladinConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) {
      throw std::invalid_argument{what};
    }
  };
  require(mu0 > 0, "mu0 must be positive");
  require(mu_shrink > 0 && mu_shrink < 1, "mu_shrink must lie in (0, 1)");
  require(mu_min >= 0, "mu_min must be non-negative");
  require(rho0 > 0, "rho0 must be positive");
  require(rho_grow > 1, "rho_grow must exceed 1");
  require(rho_max > 0, "rho_max must be positive");
  require(r > 0, "r must be positive");
  require(wP > 0 && wM > 0, "wP and wM must be positive");
  require(sigma1 > 0 && sigma2 > 0 && sigma3 > 0, "sigma1..3 must be positive");
  require(theta > 0 && theta <= 1, "theta must lie in (0, 1]");
  require(tol_comp > 0 && tol_cons > 0 && tol_step > 0,
          "tolerances must be positive");
  require(max_outer >= 1, "max_outer must be at least 1");
  require(inner.tol > 0 && inner.max_iter >= 1, "invalid inner settings");
  require(reg.delta0 > 0 && reg.eps_pd > 0 && reg.retry_budget >= 0,
          "invalid regularization settings");
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged:
      return "Converged";
    case SolveStatus::MaxIterations:
      return "MaxIterations";
    case SolveStatus::InnerSolverFailure:
      return "InnerSolverFailure";
    case SolveStatus::LinearSolverSingular:
      return "LinearSolverSingular";
    case SolveStatus::Diverged:
      return "Diverged";
  }
  return "Unknown";
}

ConsensusQpSolution solve_consensus_qp(const SubproblemSolution& hats,
                                       const Sensitivities& sens,
                                       const Eigen::MatrixXd& C,
                                       const CouplingMatrices& coupling,
                                       const RegConfig& reg) {
  const Eigen::Index na = hats.alpha_hat.size();
  const Eigen::Index nb = hats.beta_hat.size();
  const Eigen::Index nc = hats.gamma_hat.size();
  const Eigen::Index dg = C.rows();
  const Eigen::Index nz = na + nb + nc;

  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(nz, nz);
  H.topLeftCorner(na, na) = sens.H1;
  H.diagonal().segment(na, nb) = sens.H2;
  H.diagonal().tail(nc) = sens.H3;

  Eigen::VectorXd g(nz);
  g << sens.g1, sens.g2, sens.g3;

  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(dg + na, nz);
  J.topLeftCorner(dg, na) = C;
  J.bottomRows(na) << coupling.A1, coupling.A2, coupling.A3;

  Eigen::VectorXd c = Eigen::VectorXd::Zero(dg + na);
  c.tail(na) = -(coupling.A1 * hats.alpha_hat + coupling.A2 * hats.beta_hat +
                 coupling.A3 * hats.gamma_hat);

  const auto sol = kkt_solve(H, J, g, c, reg);

  ConsensusQpSolution out;
  out.alpha = hats.alpha_hat + sol.step.head(na);
  out.beta = hats.beta_hat + sol.step.segment(na, nb);
  out.gamma = hats.gamma_hat + sol.step.tail(nc);
  out.nu_local = sol.multipliers.head(dg);
  out.lambda_qp = sol.multipliers.tail(na);
  out.shift = sol.shift;
  return out;
}

Eigen::VectorXd dual_update(const Eigen::VectorXd& lambda,
                            const Eigen::VectorXd& lambda_qp, double theta) {
  if (theta == 1.0) {
    return lambda_qp;
  }
  return lambda + theta * (lambda_qp - lambda);
}

Parameters update_parameters(double mu, double rho, const AladinConfig& cfg) {
  return {std::max(mu * cfg.mu_shrink, cfg.mu_min),
          std::min(rho * cfg.rho_grow, cfg.rho_max)};
}

std::optional<SolveStatus> check_termination(const IterationRecord& record,
                                             const AladinConfig& cfg) {
  const bool finite =
      std::isfinite(record.objective) && std::isfinite(record.comp_residual) &&
      std::isfinite(record.step_norm) &&
      std::isfinite(record.consensus_residual.value_or(0)) &&
      std::isfinite(record.local_eq_residual.value_or(0)) &&
      record.x.allFinite();
  if (!finite) {
    return SolveStatus::Diverged;
  }
  if (record.comp_residual <= cfg.tol_comp &&
      record.consensus_residual.value_or(0) <= cfg.tol_cons &&
      record.step_norm <= cfg.tol_step) {
    return SolveStatus::Converged;
  }
  if (record.k >= cfg.max_outer) {
    return SolveStatus::MaxIterations;
  }
  return std::nullopt;
}

void check_start(const MpccOracle& oracle, const Eigen::VectorXd& x0, double r) {
  if (x0.size() != oracle.n()) {
    throw std::invalid_argument{"start point has size " +
                                std::to_string(x0.size()) + ", expected " +
                                std::to_string(oracle.n())};
  }
  if (!x0.allFinite()) {
    throw std::invalid_argument{"start point is not finite"};
  }
  const auto& bounds = oracle.bounds();
  for (Eigen::Index i = 0; i < x0.size(); ++i) {
    if (!(r + orientation(bounds[i]) * x0(i) > 0)) {
      throw std::invalid_argument{"start point outside the barrier domain at " +
                                  std::to_string(i)};
    }
  }
}

SplitState initial_state(const MpccOracle& oracle, const Eigen::VectorXd& x0) {
  SplitState s = SplitState::zeros(oracle.n(), oracle.d_g());
  const Eigen::VectorXd g = oracle.eval_g(x0);
  s.x = x0;
  s.beta = x0;
  s.p = g.cwiseMax(0.0).array() + 0.1;
  s.n_slack = (-g).cwiseMax(0.0).array() + 0.1;
  s.q = s.p;
  s.m_copy = s.n_slack;
  return s;
}

SolveResult run_aladin_beta(const MpccOracle& oracle, const Eigen::VectorXd& x0,
                            const AladinConfig& cfg, const SolveHooks& hooks) {
  cfg.validate();
  check_start(oracle, x0, cfg.r);

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const CouplingMatrices coupling = build_coupling(oracle.n(), oracle.d_g());
  const ProxWeights prox = cfg.prox();

  SolveResult result;
  result.state = initial_state(oracle, x0);
  double mu = cfg.mu0;
  double rho = cfg.rho0;

  for (int k = 1;; ++k) {
    SplitState& state = result.state;
    const SplitWeights w = cfg.weights(mu, rho);
    try {
      const SubproblemSolution hats =
          solve_subproblems(state, oracle, w, prox, cfg.inner, cfg.parallel);
      const Sensitivities sens =
          assemble_sensitivities(state, hats, oracle, w, prox, cfg.reg);
      if (hooks.on_iteration) {
        hooks.on_iteration(IterationDetail{k, state, hats, sens, w, prox});
      }
      const Eigen::MatrixXd C = local_equality_jacobian(hats.alpha_hat, oracle);
      const ConsensusQpSolution qp =
          solve_consensus_qp(hats, sens, C, coupling, cfg.reg);

      IterationRecord rec;
      rec.k = k;
      rec.mu = mu;
      rec.rho = rho;
      rec.consensus_residual = inf_norm(
          coupling_residual(hats.alpha_hat, hats.beta_hat, hats.gamma_hat));
      rec.step_norm = std::max({inf_norm(qp.alpha - state.alpha()),
                                inf_norm(qp.beta - state.beta),
                                inf_norm(qp.gamma - state.gamma())});
      rec.inner_iters = hats.inner_iterations;

      state.set_alpha(qp.alpha);
      state.beta = qp.beta;
      state.set_gamma(qp.gamma);
      state.lambda = dual_update(state.lambda, qp.lambda_qp, cfg.theta);
      state.kappa = hats.kappa_hat;

      rec.x = state.x;
      rec.objective = oracle.eval_f(state.x);
      rec.comp_residual = inf_norm(oracle.eval_g(state.x));
      rec.local_eq_residual = inf_norm(eval_local_equality(qp.alpha, oracle));
      if (cfg.reference_solution) {
        rec.x_error = (state.x - *cfg.reference_solution).norm();
      }
      rec.wall_time_s =
          std::chrono::duration<double>(Clock::now() - start).count();
      result.records.push_back(rec);
      if (hooks.on_record) {
        hooks.on_record(rec);
      }

      if (auto status = check_termination(rec, cfg)) {
        result.status = *status;
        if (*status == SolveStatus::Diverged) {
          result.message = "non-finite iterate";
          result.failure_iteration = k;
        }
        return result;
      }
    } catch (const InnerSolverFailure& e) {
      result.status = SolveStatus::InnerSolverFailure;
      result.message = e.what();
      result.failure_iteration = k;
      return result;
    } catch (const LinearSolverSingular& e) {
      result.status = SolveStatus::LinearSolverSingular;
      result.message = e.what();
      result.failure_iteration = k;
      return result;
    } catch (const DomainError& e) {
      result.status = SolveStatus::Diverged;
      result.message = e.what();
      result.failure_iteration = k;
      return result;
    }

    const Parameters next = update_parameters(mu, rho, cfg);
    mu = next.mu;
    rho = next.rho;
  }
}

}  // namespace aladin
