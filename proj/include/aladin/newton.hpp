#pragma once

#include <functional>

#include <Eigen/Core>

namespace aladin {

/**
 * Twice differentiable objective for the modified Newton minimizer.
 *
 * value returns +∞ outside the domain. gradient_scale returns the
 * magnitude (≥ 1) against which the gradient norm is compared.
 */
struct SmoothObjective {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> hessian;
  std::function<double(const Eigen::VectorXd&)> gradient_scale;
};

/// Outcome of one modified Newton iteration.
struct NewtonStep {
  Eigen::VectorXd x;
  /// Scaled gradient norm at the input point.
  double residual = 0;
  /// True iff the input point already met the tolerance with no negative
  /// curvature; x is then returned unchanged.
  bool stationary = false;
  bool negative_curvature = false;
};

/**
 * One iteration of eigenvalue-modified Newton with a curvilinear
 * negative-curvature search.
 *
 * The Newton direction uses |λᵢ| on the Hessian spectrum and drops
 * numerically null directions. With negative curvature, the search runs along
 * x + t²s + td, where d is the projection of a descending ramp onto the
 * negative eigenspace. Acceptance is Armijo on the value; a full step that
 * reduces the gradient norm is accepted outright when the Hessian is
 * positive semidefinite.
 */
NewtonStep newton_step(const SmoothObjective& objective,
                       const Eigen::VectorXd& x, double tol);

/**
 * Unit vector in span(V) closest to the descending ramp (n, n−1, ..., 1),
 * oriented so that gradᵀd ≤ 0. Falls back to the first column of V when
 * the ramp is orthogonal to the span.
 */
Eigen::VectorXd curvature_direction(const Eigen::MatrixXd& V,
                                    const Eigen::VectorXd& grad);

struct NewtonResult {
  Eigen::VectorXd x;
  int iterations = 0;
  double residual = 0;
  bool converged = false;
};

/// Repeats newton_step until stationary or max_iter steps were taken.
NewtonResult newton_minimize(const SmoothObjective& objective,
                             Eigen::VectorXd x0, double tol, int max_iter);

}  // namespace aladin
