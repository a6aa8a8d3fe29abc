#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "aladin/errors.hpp"

namespace aladin {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/**
 * Tunables for the regularized linear solves.
 *
 * Hessian blocks are shifted by the smallest δ in {0, δ₀, 10δ₀, ...} that
 * lifts their minimum eigenvalue to eps_pd. Singular KKT factorizations are
 * retried with up to retry_budget geometrically growing shifts.
 */
struct RegConfig {
  double delta0 = 1e-8;
  double eps_pd = 1e-8;
  int retry_budget = 8;
  double pivot_tol = 1e-14;
  /// Largest admissible shift is max_shift_factor·δ₀·max(1, 10‖H‖∞).
  double max_shift_factor = 1e8;
};

/// Infinity norm that returns 0 for empty inputs.
template <typename Derived>
typename Derived::Scalar inf_norm(const Eigen::MatrixBase<Derived>& v) {
  return v.size() == 0 ? typename Derived::Scalar(0)
                       : v.template lpNorm<Eigen::Infinity>();
}

/// Largest absolute entry, 0 for empty inputs.
template <typename Derived>
typename Derived::Scalar max_abs(const Eigen::MatrixBase<Derived>& A) {
  return A.size() == 0 ? typename Derived::Scalar(0) : A.cwiseAbs().maxCoeff();
}

/// True iff every entry is finite.
template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& A) {
  return A.allFinite();
}

/**
 * Solves Ax = b by LU with partial pivoting.
 *
 * @throws LinearSolverSingular if a pivot falls below pivot_tol·max|A|.
 */
template <typename DerivedA, typename DerivedB>
VectorX<typename DerivedA::Scalar> lu_solve(
    const Eigen::MatrixBase<DerivedA>& A, const Eigen::MatrixBase<DerivedB>& b,
    double pivot_tol = 1e-14) {
  using Scalar = typename DerivedA::Scalar;
  if (A.rows() != A.cols() || A.rows() != b.rows()) {
    throw std::invalid_argument{"lu_solve: dimension mismatch"};
  }
  if (A.rows() == 0) {
    return VectorX<Scalar>{};
  }
  if (!A.allFinite()) {
    throw LinearSolverSingular{"lu_solve: non-finite matrix entry", -1};
  }

  Eigen::PartialPivLU<MatrixX<Scalar>> lu{A};
  const Scalar threshold = Scalar(pivot_tol) * max_abs(A);
  const auto& diag = lu.matrixLU().diagonal();
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    if (!(std::abs(diag(i)) > threshold)) {
      throw LinearSolverSingular{
          "lu_solve: pivot " + std::to_string(i) + " below threshold", i};
    }
  }
  return lu.solve(b);
}

/// Smallest eigenvalue of a symmetric matrix (dense self-adjoint solver).
template <typename Derived>
typename Derived::Scalar min_eigenvalue_estimate(
    const Eigen::MatrixBase<Derived>& S) {
  using Scalar = typename Derived::Scalar;
  if (S.rows() == 0) {
    return Scalar(0);
  }
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> es{
      S.derived(), Eigen::EigenvaluesOnly};
  return es.eigenvalues()(0);
}

/// Result of lifting a symmetric matrix into the positive definite cone.
template <typename Scalar>
struct ShiftedMatrix {
  MatrixX<Scalar> matrix;
  Scalar shift;
};

/**
 * Returns H + δI with the smallest δ in {0, δ₀, 10δ₀, ...} whose minimum
 * eigenvalue is at least eps_pd.
 *
 * @throws LinearSolverSingular if the required δ exceeds
 *   max_shift_factor·δ₀·max(1, 10‖H‖∞).
 */
template <typename Derived>
ShiftedMatrix<typename Derived::Scalar> regularize_pd(
    const Eigen::MatrixBase<Derived>& H, const RegConfig& reg) {
  using Scalar = typename Derived::Scalar;
  const Scalar lmin = min_eigenvalue_estimate(H);
  if (!std::isfinite(lmin)) {
    throw LinearSolverSingular{"regularize_pd: non-finite spectrum", -1};
  }
  MatrixX<Scalar> out = H;
  if (lmin >= Scalar(reg.eps_pd)) {
    return {std::move(out), Scalar(0)};
  }

  const Scalar norm = H.cwiseAbs().rowwise().sum().maxCoeff();
  const Scalar cap = Scalar(reg.max_shift_factor * reg.delta0) *
                     std::max(Scalar(1), Scalar(10) * norm);
  Scalar delta = Scalar(reg.delta0);
  while (lmin + delta < Scalar(reg.eps_pd)) {
    delta *= Scalar(10);
    if (delta > cap) {
      throw LinearSolverSingular{"regularize_pd: shift budget exceeded", -1};
    }
  }
  out.diagonal().array() += delta;
  return {std::move(out), delta};
}

/// Solution of a saddle-point system.
template <typename Scalar>
struct KktSolution {
  VectorX<Scalar> step;
  VectorX<Scalar> multipliers;
  /// Diagonal shift that was added to H to obtain a regular factorization.
  Scalar shift = 0;
};

/**
 * Symmetric Ruiz equilibration: returns D such that every row of DKD has
 * unit max-norm (to within a few sweeps).
 */
template <typename Derived>
VectorX<typename Derived::Scalar> equilibrate_symmetric(
    const Eigen::MatrixBase<Derived>& K, int sweeps = 20) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = K.rows();
  VectorX<Scalar> D = VectorX<Scalar>::Ones(n);
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    Scalar worst = 0;
    VectorX<Scalar> scale(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      Scalar row = 0;
      for (Eigen::Index j = 0; j < n; ++j) {
        row = std::max(row, std::abs(D(i) * K(i, j) * D(j)));
      }
      scale(i) = row > 0 ? Scalar(1) / std::sqrt(row) : Scalar(1);
      worst = std::max(worst, std::abs(Scalar(1) - row));
    }
    D.array() *= scale.array();
    if (worst < Scalar(1e-2)) {
      break;
    }
  }
  return D;
}

/**
 * Solves the saddle-point system
 *
 *   [H  Jᵀ][d]   [−g]
 *   [J  0 ][ν] = [ c]
 *
 * with symmetric equilibration, LU with pivot checks and one step of
 * iterative refinement. A singular factorization is retried with
 * H + δI for δ = δ₀, 10δ₀, ... up to retry_budget times.
 *
 * @throws LinearSolverSingular after the retry budget is exhausted.
 */
template <typename DerivedH, typename DerivedJ, typename DerivedG,
          typename DerivedC>
KktSolution<typename DerivedH::Scalar> kkt_solve(
    const Eigen::MatrixBase<DerivedH>& H, const Eigen::MatrixBase<DerivedJ>& J,
    const Eigen::MatrixBase<DerivedG>& g, const Eigen::MatrixBase<DerivedC>& c,
    const RegConfig& reg = {}) {
  using Scalar = typename DerivedH::Scalar;
  const Eigen::Index n = H.rows();
  const Eigen::Index m = J.rows();
  if (H.cols() != n || g.size() != n || c.size() != m ||
      (m > 0 && J.cols() != n)) {
    throw std::invalid_argument{"kkt_solve: dimension mismatch"};
  }

  MatrixX<Scalar> K = MatrixX<Scalar>::Zero(n + m, n + m);
  K.topLeftCorner(n, n) = H;
  if (m > 0) {
    K.topRightCorner(n, m) = J.transpose();
    K.bottomLeftCorner(m, n) = J;
  }
  VectorX<Scalar> rhs(n + m);
  rhs.head(n) = -g;
  rhs.tail(m) = c;

  const VectorX<Scalar> D = equilibrate_symmetric(K);
  Scalar shift = 0;
  for (int attempt = 0; attempt <= reg.retry_budget; ++attempt) {
    MatrixX<Scalar> Ks = K;
    Ks.topLeftCorner(n, n).diagonal().array() += shift;
    const MatrixX<Scalar> Kt = D.asDiagonal() * Ks * D.asDiagonal();
    const VectorX<Scalar> rt = D.asDiagonal() * rhs;
    try {
      Eigen::PartialPivLU<MatrixX<Scalar>> lu{Kt};
      const Scalar threshold = Scalar(reg.pivot_tol) * max_abs(Kt);
      const auto& diag = lu.matrixLU().diagonal();
      for (Eigen::Index i = 0; i < diag.size(); ++i) {
        if (!(std::abs(diag(i)) > threshold)) {
          throw LinearSolverSingular{"kkt_solve: small pivot", i};
        }
      }
      VectorX<Scalar> y = lu.solve(rt);
      y += lu.solve(rt - Kt * y);
      if (!y.allFinite()) {
        throw LinearSolverSingular{"kkt_solve: non-finite solution", -1};
      }
      const VectorX<Scalar> z = D.asDiagonal() * y;
      return {z.head(n), z.tail(m), shift};
    } catch (const LinearSolverSingular&) {
      shift = attempt == 0 ? Scalar(reg.delta0) : shift * Scalar(10);
    }
  }
  throw LinearSolverSingular{"kkt_solve: retry budget exhausted", -1};
}

}  // namespace aladin
