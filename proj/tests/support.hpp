#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "aladin/problem.hpp"

namespace aladin::test {

inline Eigen::MatrixXd random_matrix(std::mt19937_64& rng, Eigen::Index rows,
                                     Eigen::Index cols, double scale = 1.0) {
  std::uniform_real_distribution<double> u{-scale, scale};
  Eigen::MatrixXd A(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      A(i, j) = u(rng);
    }
  }
  return A;
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, Eigen::Index n,
                                     double scale = 1.0) {
  return random_matrix(rng, n, 1, scale);
}

/// Symmetric positive definite matrix with eigenvalues in [floor, floor + n].
inline Eigen::MatrixXd random_spd(std::mt19937_64& rng, Eigen::Index n,
                                  double floor = 1.0) {
  const Eigen::MatrixXd B = random_matrix(rng, n, n);
  Eigen::MatrixXd S = B.transpose() * B / static_cast<double>(n);
  S.diagonal().array() += floor;
  return S;
}

/// Random QPCC instance with symmetric (possibly indefinite) Q.
inline QpccProblem random_qpcc(std::mt19937_64& rng, Eigen::Index n,
                               Eigen::Index pairs, ComplementarityMode mode) {
  const Eigen::MatrixXd B = random_matrix(rng, n, n);
  std::vector<BoundSign> bounds(static_cast<std::size_t>(n));
  std::uniform_int_distribution<int> pick{0, 2};
  for (auto& b : bounds) {
    b = static_cast<BoundSign>(pick(rng));
  }
  return QpccProblem{0.5 * (B + B.transpose()), random_vector(rng, n),
                     random_matrix(rng, pairs, n),  random_vector(rng, pairs),
                     random_matrix(rng, pairs, n),  random_vector(rng, pairs),
                     mode,                          bounds,
                     random_vector(rng, 1)(0)};
}

/**
 * Strictly convex QP with linear equalities Fx + f0 = 0 written as a QPCC
 * with E = 0, e0 = e and free bounds.
 */
inline QpccProblem smooth_instance() {
  Eigen::MatrixXd Q(4, 4);
  Q << 4, 1, 0, 0,  //
      1, 3, 0.5, 0,  //
      0, 0.5, 2, 0.2,  //
      0, 0, 0.2, 5;
  Eigen::VectorXd c(4);
  c << 1, -2, 0.5, 1;
  Eigen::MatrixXd F(2, 4);
  F << 1, 1, 0, 1,  //
      0, 1, -1, 2;
  Eigen::VectorXd f0(2);
  f0 << -1, 0.5;
  return QpccProblem{Q,  c,  Eigen::MatrixXd::Zero(2, 4), Eigen::VectorXd::Ones(2),
                     F,  f0, ComplementarityMode::Componentwise,
                     std::vector<BoundSign>(4, BoundSign::Free)};
}

/// Minimizer of ½xᵀQx + cᵀx s.t. Fx + f0 = 0 from the dense KKT system.
inline Eigen::VectorXd equality_qp_solution(const QpccProblem& p) {
  const Eigen::Index n = p.n();
  const Eigen::Index m = p.F().rows();
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n + m, n + m);
  K.topLeftCorner(n, n) = p.Q();
  K.topRightCorner(n, m) = p.F().transpose();
  K.bottomLeftCorner(m, n) = p.F();
  Eigen::VectorXd rhs(n + m);
  rhs << -p.c(), -p.f0();
  return K.fullPivLu().solve(rhs).head(n);
}

/**
 * min ½zᵀHz + gᵀz s.t. Mz = b by null-space elimination: particular solution
 * and null-space basis from the SVD of M, then a Cholesky solve of the
 * reduced Hessian.
 */
inline Eigen::VectorXd nullspace_qp(const Eigen::MatrixXd& H, const Eigen::VectorXd& g,
                                    const Eigen::MatrixXd& M, const Eigen::VectorXd& b) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd{M, Eigen::ComputeFullU | Eigen::ComputeFullV};
  const Eigen::VectorXd& s = svd.singularValues();
  const double tol = 1e-12 * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > tol) {
    ++rank;
  }
  const Eigen::MatrixXd& U = svd.matrixU();
  const Eigen::MatrixXd& V = svd.matrixV();
  const Eigen::VectorXd z0 = V.leftCols(rank) *
                             (U.leftCols(rank).transpose() * b).cwiseQuotient(s.head(rank));
  const Eigen::MatrixXd Z = V.rightCols(V.cols() - rank);
  const Eigen::MatrixXd Hr = Z.transpose() * H * Z;
  const Eigen::VectorXd gr = Z.transpose() * (H * z0 + g);
  return z0 - Z * Hr.llt().solve(gr);
}

/// Root of a continuous function with a sign change on [lo, hi].
inline double bisect(const std::function<double(double)>& h, double lo, double hi) {
  double flo = h(lo);
  for (int it = 0; it < 400 && hi - lo > 0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      break;
    }
    const double fm = h(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace aladin::test
