#include "aladin/newton.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "aladin/numkernel.hpp"

namespace aladin {

namespace {

constexpr double kNegativeCurvature = 1e-8;
constexpr double kNullSpace = 1e-9;
constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-8;

Eigen::VectorXd descending_ramp(Eigen::Index n) {
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    z(i) = static_cast<double>(n - i);
  }
  return z.normalized();
}

}  // namespace

Eigen::VectorXd curvature_direction(const Eigen::MatrixXd& V,
                                    const Eigen::VectorXd& grad) {
  Eigen::VectorXd v = V * (V.transpose() * descending_ramp(V.rows()));
  if (v.norm() < 1e-8) {
    v = V.col(0);
  }
  v.normalize();
  if (grad.dot(v) > 0) {
    v = -v;
  }
  return v;
}

NewtonStep newton_step(const SmoothObjective& objective,
                       const Eigen::VectorXd& x, double tol) {
  NewtonStep out;
  out.x = x;

  const Eigen::VectorXd grad = objective.gradient(x);
  const double gnorm0 = inf_norm(grad);
  out.residual = gnorm0 / objective.gradient_scale(x);

  const Eigen::MatrixXd H = objective.hessian(x);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{H};
  const Eigen::VectorXd& ev = es.eigenvalues();
  const Eigen::MatrixXd& V = es.eigenvectors();
  const double hscale = std::max(1.0, ev.cwiseAbs().maxCoeff());

  out.negative_curvature = ev(0) < -kNegativeCurvature * hscale;
  if (out.residual <= tol && !out.negative_curvature) {
    out.stationary = true;
    return out;
  }

  Eigen::VectorXd s = Eigen::VectorXd::Zero(x.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) > kNullSpace * hscale) {
      s -= V.col(i) * (V.col(i).dot(grad) / std::abs(ev(i)));
    }
  }

  Eigen::VectorXd d = Eigen::VectorXd::Zero(x.size());
  double curvature = 0;
  if (out.negative_curvature) {
    Eigen::Index count = 0;
    while (count < ev.size() && ev(count) < -kNegativeCurvature * hscale) {
      ++count;
    }
    d = curvature_direction(V.leftCols(count), grad) * std::max(s.norm(), 1.0);
    curvature = d.dot(H * d);
  }

  const double f0 = objective.value(x);
  const double predicted = grad.dot(s) + 0.5 * std::min(curvature, 0.0);
  auto trial = [&](double t) -> Eigen::VectorXd { return x + t * t * s + t * d; };
  auto gnorm = [&](const Eigen::VectorXd& y) {
    return inf_norm(objective.gradient(y));
  };

  if (!out.negative_curvature) {
    const Eigen::VectorXd full = x + s;
    if (std::isfinite(objective.value(full)) && gnorm(full) < gnorm0) {
      out.x = full;
      return out;
    }
  }

  double t = 1.0;
  while (t > kMinStep) {
    const double ft = objective.value(trial(t));
    if (std::isfinite(ft) && ft <= f0 + kArmijo * t * t * predicted) {
      out.x = trial(t);
      return out;
    }
    t *= 0.5;
  }

  if (!out.negative_curvature) {
    for (t = 1.0; t > kMinStep; t *= 0.5) {
      const Eigen::VectorXd y = x + t * t * s;
      if (std::isfinite(objective.value(y)) && gnorm(y) < gnorm0) {
        out.x = y;
        return out;
      }
    }
  }
  return out;
}

NewtonResult newton_minimize(const SmoothObjective& objective,
                             Eigen::VectorXd x0, double tol, int max_iter) {
  NewtonResult result;
  result.x = std::move(x0);
  for (int it = 0;; ++it) {
    NewtonStep step = newton_step(objective, result.x, tol);
    result.residual = step.residual;
    if (step.stationary) {
      result.converged = true;
      result.iterations = it;
      return result;
    }
    if (it == max_iter) {
      result.iterations = it;
      return result;
    }
    result.x = std::move(step.x);
  }
}

}  // namespace aladin
