#include "aladin/baselines.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "aladin/errors.hpp"
#include "aladin/newton.hpp"
#include "aladin/numkernel.hpp"

namespace aladin {

SlackPair eliminate_slacks(double g, double mu, double rho) {
  const double S = std::hypot(rho * g, mu);
  const double u = mu - rho * g >= 0 ? (mu - rho * g + S) / (2 * rho)
                                     : mu * g / (S - mu + rho * g);
  const double v = mu + rho * g >= 0 ? (mu + rho * g + S) / (2 * rho)
                                     : -mu * g / (S - mu - rho * g);
  return {v, u};
}

double penalty_barrier_value(double g, double mu, double rho, double r) {
  const auto [v, u] = eliminate_slacks(g, mu, rho);
  return rho * (v + u - 2 * r) - mu * (std::log(v) + std::log(u));
}

double penalty_barrier_slope(double g, double mu, double rho) {
  const auto [v, u] = eliminate_slacks(g, mu, rho);
  return mu * g / (2 * u * v);
}

double penalty_barrier_curvature(double g, double mu, double rho) {
  const auto [v, u] = eliminate_slacks(g, mu, rho);
  const double S = std::hypot(rho * g, mu);
  const double num = g >= 0 ? S + rho * g : mu * mu / (S - rho * g);
  return mu / (v * v) * num / (2 * S);
}

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-10;
constexpr double kFractionToBoundary = 0.995;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Relaxed log-barrier on x and its first two derivatives.
struct BoundBarrier {
  const std::vector<BoundSign>& bounds;
  double mu;
  double r;

  double value(const Eigen::VectorXd& x) const {
    double out = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const int tau = orientation(bounds[i]);
      if (tau == 0) {
        continue;
      }
      const double arg = r + tau * x(i);
      if (!(arg > 0)) {
        return std::numeric_limits<double>::infinity();
      }
      out -= mu * std::log(arg);
    }
    return out;
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const int tau = orientation(bounds[i]);
      if (tau != 0) {
        out(i) = -mu * tau / (r + tau * x(i));
      }
    }
    return out;
  }

  Eigen::VectorXd curvature(const Eigen::VectorXd& x) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const int tau = orientation(bounds[i]);
      if (tau != 0) {
        const double arg = r + tau * x(i);
        out(i) = mu / (arg * arg);
      }
    }
    return out;
  }

  /// Largest t ≤ 1 keeping r + τ(x + t·dx) ≥ (1 − 0.995)(r + τx).
  double max_step(const Eigen::VectorXd& x, const Eigen::VectorXd& dx) const {
    double t = 1.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const int tau = orientation(bounds[i]);
      if (tau != 0 && tau * dx(i) < 0) {
        t = std::min(t, kFractionToBoundary * (r + tau * x(i)) / (-tau * dx(i)));
      }
    }
    return t;
  }
};

struct SearchDirections {
  Eigen::VectorXd s;
  /// Negative curvature direction, zero if none was found.
  Eigen::VectorXd d;
  /// dᵀ(A + JᵀDJ)d.
  double curvature = 0;
};

/// Unit direction of negative curvature of A + JᵀDJ, or an empty vector.
Eigen::VectorXd negative_curvature(const Eigen::MatrixXd& A, const Eigen::MatrixXd& J,
                                   const Eigen::VectorXd& Dg,
                                   const Eigen::VectorXd& grad) {
  const Eigen::Index n = A.rows();
  const Eigen::Index m = J.rows();
  auto pick = [&](const Eigen::MatrixXd& basis, const Eigen::MatrixXd& reduced)
      -> Eigen::VectorXd {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{reduced};
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double tol = 1e-8 * std::max(1.0, ev.cwiseAbs().maxCoeff());
    Eigen::Index count = 0;
    while (count < ev.size() && ev(count) < -tol) {
      ++count;
    }
    if (count == 0) {
      return {};
    }
    return curvature_direction(basis * es.eigenvectors().leftCols(count), grad);
  };

  if (m < n) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr{J.transpose()};
    const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd Z = Q.rightCols(n - m);
    Eigen::VectorXd v = pick(Z, Z.transpose() * A * Z);
    if (v.size() == n) {
      return v;
    }
  }
  const Eigen::MatrixXd H = A + J.transpose() * Dg.asDiagonal() * J;
  return pick(Eigen::MatrixXd::Identity(n, n), H);
}

/// f + bound barrier + Σ V(gᵢ) for fixed (μ, ρ).
class ReducedPenaltyBarrier {
 public:
  ReducedPenaltyBarrier(const MpccOracle& oracle, double mu, double rho, double r)
      : m_oracle{oracle}, m_barrier{oracle.bounds(), mu, r}, m_mu{mu}, m_rho{rho} {}

  double value(const Eigen::VectorXd& x) const {
    const double b = m_barrier.value(x);
    if (!std::isfinite(b)) {
      return b;
    }
    const Eigen::VectorXd g = m_oracle.eval_g(x);
    double v = m_oracle.eval_f(x) + b;
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      const auto [pv, pu] = eliminate_slacks(g(i), m_mu, m_rho);
      v += m_rho * (pv + pu) - m_mu * (std::log(pv) + std::log(pu));
    }
    return v;
  }

  Eigen::VectorXd multipliers(const Eigen::VectorXd& x) const {
    const Eigen::VectorXd g = m_oracle.eval_g(x);
    return g.unaryExpr(
        [&](double gi) { return penalty_barrier_slope(gi, m_mu, m_rho); });
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const {
    return m_oracle.grad_f(x) + m_barrier.gradient(x) +
           m_oracle.jac_g(x).transpose() * multipliers(x);
  }

  double residual(const Eigen::VectorXd& x) const {
    const Eigen::VectorXd gf = m_oracle.grad_f(x);
    const Eigen::VectorXd gb = m_barrier.gradient(x);
    const Eigen::VectorXd jk = m_oracle.jac_g(x).transpose() * multipliers(x);
    const double scale =
        1.0 + std::max({inf_norm(gf), inf_norm(gb), inf_norm(jk)});
    return inf_norm(gf + gb + jk) / scale;
  }

  /**
   * Newton direction s from the equilibrated augmented system
   * [A + δI, Jᵀ; J, −D⁻¹] with the smallest δ giving the inertia
   * (n, d_g, 0), where A = ∇²f + ∇²B + ∇²(κᵀg) and D = diag(V″). When δ > 0
   * the step also carries a direction d of negative curvature of the reduced
   * Hessian A + JᵀDJ, taken from ZᵀAZ on the null space of J or, failing
   * that, from the explicit reduced Hessian.
   */
  SearchDirections directions(const Eigen::VectorXd& x, const RegConfig& reg) const {
    const Eigen::Index n = x.size();
    const Eigen::VectorXd g = m_oracle.eval_g(x);
    const Eigen::Index m = g.size();
    const Eigen::MatrixXd J = m_oracle.jac_g(x);
    const Eigen::VectorXd grad = gradient(x);
    Eigen::MatrixXd A = m_oracle.hess_f(x) + m_oracle.hess_gl(x, multipliers(x));
    A.diagonal() += m_barrier.curvature(x);
    Eigen::VectorXd Dg(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      Dg(i) = std::max(penalty_barrier_curvature(g(i), m_mu, m_rho),
                       std::numeric_limits<double>::min());
    }

    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n + m, n + m);
    K.topLeftCorner(n, n) = A;
    K.topRightCorner(n, m) = J.transpose();
    K.bottomLeftCorner(m, n) = J;
    K.bottomRightCorner(m, m).diagonal() = -Dg.cwiseInverse();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + m);
    rhs.head(n) = -grad;

    const double norm = A.cwiseAbs().rowwise().sum().maxCoeff();
    const double cap = reg.max_shift_factor * reg.delta0 * std::max(1.0, 10 * norm);
    SearchDirections out;
    double delta = 0;
    while (true) {
      Eigen::MatrixXd Ks = K;
      Ks.topLeftCorner(n, n).diagonal().array() += delta;
      const Eigen::VectorXd D = equilibrate_symmetric(Ks);
      const Eigen::MatrixXd Kt = D.asDiagonal() * Ks * D.asDiagonal();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Kt};
      const Eigen::VectorXd& ev = es.eigenvalues();
      const double tiny = 1e-12 * std::max(1.0, ev.cwiseAbs().maxCoeff());
      const Eigen::Index negatives = (ev.array() < -tiny).count();
      const Eigen::Index zeros = (ev.array().abs() <= tiny).count();
      if (negatives == m && zeros == 0) {
        const Eigen::MatrixXd& V = es.eigenvectors();
        const Eigen::VectorXd y =
            V * (V.transpose() * (D.asDiagonal() * rhs)).cwiseQuotient(ev);
        out.s = (D.asDiagonal() * y).head(n);
        break;
      }
      delta = delta == 0 ? reg.delta0 : 10 * delta;
      if (delta > cap) {
        throw LinearSolverSingular{"penalty-barrier Newton: inertia correction failed",
                                   -1};
      }
    }

    out.d = Eigen::VectorXd::Zero(n);
    if (delta > 0) {
      const Eigen::VectorXd v = negative_curvature(A, J, Dg, grad);
      if (v.size() == n) {
        out.d = v * std::max(out.s.norm(), 1.0);
        const Eigen::VectorXd Jd = J * out.d;
        out.curvature = out.d.dot(A * out.d) + Jd.dot(Dg.cwiseProduct(Jd));
      }
    }
    return out;
  }

  const BoundBarrier& barrier() const { return m_barrier; }

 private:
  const MpccOracle& m_oracle;
  BoundBarrier m_barrier;
  double m_mu;
  double m_rho;
};

/**
 * Full Newton step when no negative curvature is present and it lowers ‖∇Φ‖∞
 * without raising Φ beyond roundoff, else Armijo on the value along x + t²s + td, then a gradient-norm decrease
 * along s as fallback. Returns x when all fail.
 */
Eigen::VectorXd line_search(const ReducedPenaltyBarrier& model,
                            const Eigen::VectorXd& x, const SearchDirections& dir) {
  const double f0 = model.value(x);
  const Eigen::VectorXd grad = model.gradient(x);
  const double predicted =
      std::min(grad.dot(dir.s), 0.0) + 0.5 * std::min(dir.curvature, 0.0);
  const double g0 = inf_norm(grad);
  if (dir.d.isZero(0.0)) {
    const Eigen::VectorXd full = x + dir.s;
    const double noise =
        16 * std::numeric_limits<double>::epsilon() * (1 + std::abs(f0));
    if (model.value(full) <= f0 + noise && inf_norm(model.gradient(full)) < g0) {
      return full;
    }
  }
  for (double t = 1.0; t > kMinStep; t *= 0.5) {
    const Eigen::VectorXd y = x + t * t * dir.s + t * dir.d;
    const double ft = model.value(y);
    if (std::isfinite(ft) && ft <= f0 + kArmijo * t * t * predicted) {
      return y;
    }
  }
  for (double t = 1.0; t > kMinStep; t *= 0.5) {
    const Eigen::VectorXd y = x + t * dir.s;
    if (std::isfinite(model.value(y)) && inf_norm(model.gradient(y)) < g0) {
      return y;
    }
  }
  return x;
}

SplitState centralized_state(const MpccOracle& oracle, const Eigen::VectorXd& x,
                             double mu, double rho, double r) {
  SplitState s = SplitState::zeros(oracle.n(), oracle.d_g());
  s.x = x;
  s.beta = x;
  const Eigen::VectorXd g = oracle.eval_g(x);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const auto [v, u] = eliminate_slacks(g(i), mu, rho);
    s.p(i) = v - r;
    s.n_slack(i) = u - r;
    s.kappa(i) = penalty_barrier_slope(g(i), mu, rho);
  }
  s.q = s.p;
  s.m_copy = s.n_slack;
  return s;
}

IterationRecord centralized_record(const MpccOracle& oracle, int k, double mu,
                                   double rho, const Eigen::VectorXd& x,
                                   double step_norm, const AladinConfig& cfg,
                                   Clock::time_point start) {
  IterationRecord rec;
  rec.k = k;
  rec.mu = mu;
  rec.rho = rho;
  rec.x = x;
  rec.objective = oracle.eval_f(x);
  rec.comp_residual = inf_norm(oracle.eval_g(x));
  rec.step_norm = step_norm;
  rec.inner_iters = 1;
  if (cfg.reference_solution) {
    rec.x_error = (x - *cfg.reference_solution).norm();
  }
  rec.wall_time_s = seconds_since(start);
  return rec;
}

/// check_termination, with Converged held back until μ ≤ max(mu_min, tol_comp).
std::optional<SolveStatus> baseline_termination(const IterationRecord& rec,
                                                const AladinConfig& cfg) {
  auto status = check_termination(rec, cfg);
  if (status == SolveStatus::Converged && rec.mu > std::max(cfg.mu_min, cfg.tol_comp)) {
    if (rec.k >= cfg.max_outer) {
      return SolveStatus::MaxIterations;
    }
    return std::nullopt;
  }
  return status;
}

void check_baseline_config(const AladinConfig& cfg) {
  cfg.validate();
  if (!(cfg.mu_min > 0)) {
    throw std::invalid_argument{"centralized baselines require mu_min > 0"};
  }
}

}  // namespace

SolveResult run_penalty_barrier_newton(const MpccOracle& oracle,
                                       const Eigen::VectorXd& x0,
                                       const AladinConfig& cfg,
                                       BaselineSchedule schedule,
                                       const SolveHooks& hooks) {
  check_baseline_config(cfg);
  check_start(oracle, x0, cfg.r);
  const auto start = Clock::now();

  SolveResult result;
  Eigen::VectorXd x = x0;
  double mu = cfg.mu0;
  double rho = cfg.rho0;
  for (int k = 1;; ++k) {
    const ReducedPenaltyBarrier model{oracle, mu, rho, cfg.r};
    Eigen::VectorXd x_next = x;
    try {
      if (model.residual(x) > cfg.inner.tol) {
        x_next = line_search(model, x, model.directions(x, cfg.reg));
      }
    } catch (const LinearSolverSingular& e) {
      result.status = SolveStatus::LinearSolverSingular;
      result.message = e.what();
      result.failure_iteration = k;
      result.state = centralized_state(oracle, x, mu, rho, cfg.r);
      return result;
    }

    const double step = inf_norm(x_next - x);
    x = std::move(x_next);
    const IterationRecord rec =
        centralized_record(oracle, k, mu, rho, x, step, cfg, start);
    result.records.push_back(rec);
    if (hooks.on_record) {
      hooks.on_record(rec);
    }
    if (auto status = baseline_termination(rec, cfg)) {
      result.status = *status;
      if (*status == SolveStatus::Diverged) {
        result.message = "non-finite iterate";
        result.failure_iteration = k;
      }
      result.state = centralized_state(oracle, x, mu, rho, cfg.r);
      return result;
    }

    if (schedule == BaselineSchedule::PerStep || step <= cfg.tol_step ||
        model.residual(x) <= kBarrierSolveTol) {
      const Parameters next = update_parameters(mu, rho, cfg);
      mu = next.mu;
      rho = next.rho;
    }
  }
}

SolveResult run_vanilla_barrier(const MpccOracle& oracle,
                                const Eigen::VectorXd& x0,
                                const AladinConfig& cfg,
                                const SolveHooks& hooks) {
  check_baseline_config(cfg);
  check_start(oracle, x0, cfg.r);
  const auto start = Clock::now();

  SolveResult result;
  Eigen::VectorXd x = x0;
  Eigen::VectorXd kappa = Eigen::VectorXd::Zero(oracle.d_g());
  double mu = cfg.mu0;
  double rho = cfg.rho0;

  auto finish = [&](SolveStatus status, std::string message, int k) {
    result.status = status;
    result.message = std::move(message);
    result.failure_iteration = status == SolveStatus::Converged ||
                                       status == SolveStatus::MaxIterations
                                   ? 0
                                   : k;
    result.state = SplitState::zeros(oracle.n(), oracle.d_g());
    result.state.x = x;
    result.state.beta = x;
    result.state.kappa = kappa;
    return result;
  };

  for (int k = 1;; ++k) {
    const BoundBarrier barrier{oracle.bounds(), mu, cfg.r};
    auto kkt_residual = [&](const Eigen::VectorXd& y, const Eigen::VectorXd& kap) {
      Eigen::VectorXd F(y.size() + kap.size());
      F << oracle.grad_f(y) + barrier.gradient(y) + oracle.jac_g(y).transpose() * kap,
          oracle.eval_g(y);
      return F;
    };

    const Eigen::VectorXd F0 = kkt_residual(x, kappa);
    Eigen::VectorXd dx = Eigen::VectorXd::Zero(x.size());
    Eigen::VectorXd dk = Eigen::VectorXd::Zero(kappa.size());
    double t = 0;
    try {
      Eigen::MatrixXd W = oracle.hess_f(x) + oracle.hess_gl(x, kappa);
      W.diagonal() += barrier.curvature(x);
      const auto Wpd = regularize_pd(W, cfg.reg);
      const auto sol =
          kkt_solve(Wpd.matrix, oracle.jac_g(x), oracle.grad_f(x) + barrier.gradient(x),
                    -oracle.eval_g(x), cfg.reg);
      dx = sol.step;
      dk = sol.multipliers - kappa;

      const double phi0 = F0.squaredNorm();
      if (inf_norm(F0) > cfg.inner.tol) {
        for (t = barrier.max_step(x, dx); t > kMinStep; t *= 0.5) {
          const Eigen::VectorXd y = x + t * dx;
          if (!std::isfinite(barrier.value(y))) {
            continue;
          }
          const double phi = kkt_residual(y, kappa + t * dk).squaredNorm();
          if (std::isfinite(phi) && phi <= (1 - 2 * kArmijo * t) * phi0) {
            break;
          }
        }
        if (t <= kMinStep) {
          if (inf_norm(F0) > kBarrierSolveTol) {
            return finish(SolveStatus::InnerSolverFailure,
                          "vanilla barrier: line search failed", k);
          }
          t = 0;
        }
      }
    } catch (const LinearSolverSingular& e) {
      return finish(SolveStatus::LinearSolverSingular, e.what(), k);
    }

    x += t * dx;
    kappa += t * dk;
    const IterationRecord rec =
        centralized_record(oracle, k, mu, rho, x, inf_norm(t * dx), cfg, start);
    result.records.push_back(rec);
    if (hooks.on_record) {
      hooks.on_record(rec);
    }
    if (auto status = baseline_termination(rec, cfg)) {
      return finish(*status,
                    *status == SolveStatus::Diverged ? "non-finite iterate" : "", k);
    }
    if (!kappa.allFinite()) {
      return finish(SolveStatus::Diverged, "non-finite multiplier", k);
    }

    if (inf_norm(kkt_residual(x, kappa)) <= kBarrierSolveTol) {
      const Parameters next = update_parameters(mu, rho, cfg);
      mu = next.mu;
      rho = next.rho;
    }
  }
}

}  // namespace aladin
