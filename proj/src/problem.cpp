#include "aladin/problem.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace aladin {

QpccProblem::QpccProblem(Matrix Q, Vector c, Matrix E, Vector e0, Matrix F,
                         Vector f0, ComplementarityMode mode,
                         std::vector<BoundSign> bounds, double c0)
    : m_Q{std::move(Q)},
      m_c{std::move(c)},
      m_E{std::move(E)},
      m_e0{std::move(e0)},
      m_F{std::move(F)},
      m_f0{std::move(f0)},
      m_mode{mode},
      m_bounds{std::move(bounds)},
      m_c0{c0} {
  const Eigen::Index n = m_c.size();
  const Eigen::Index dc = m_e0.size();
  if (n == 0) {
    throw std::invalid_argument{"QpccProblem: empty decision vector"};
  }
  if (m_Q.rows() != n || m_Q.cols() != n) {
    throw std::invalid_argument{"QpccProblem: Q must be n×n"};
  }
  if (dc == 0 || m_E.rows() != dc || m_E.cols() != n || m_F.rows() != dc ||
      m_F.cols() != n || m_f0.size() != dc) {
    throw std::invalid_argument{
        "QpccProblem: E, F must be d_c×n with e0, f0 of length d_c ≥ 1"};
  }
  if (static_cast<Eigen::Index>(m_bounds.size()) != n) {
    throw std::invalid_argument{"QpccProblem: bounds must have length n"};
  }
  if (!(m_Q - m_Q.transpose()).isZero(1e-12 * (1 + m_Q.cwiseAbs().maxCoeff()))) {
    throw std::invalid_argument{"QpccProblem: Q must be symmetric"};
  }
}

Eigen::Index QpccProblem::d_g() const {
  return m_mode == ComplementarityMode::Aggregate ? 1 : m_e0.size();
}

double QpccProblem::eval_f(const VectorRef& x) const {
  return 0.5 * x.dot(m_Q * x) + m_c.dot(x) + m_c0;
}

QpccProblem::Vector QpccProblem::grad_f(const VectorRef& x) const {
  return m_Q * x + m_c;
}

QpccProblem::Matrix QpccProblem::hess_f(const VectorRef&) const {
  return m_Q;
}

QpccProblem::Vector QpccProblem::eval_g(const VectorRef& x) const {
  const Vector G = m_E * x + m_e0;
  const Vector H = m_F * x + m_f0;
  if (m_mode == ComplementarityMode::Aggregate) {
    return Vector::Constant(1, G.dot(H));
  }
  return G.cwiseProduct(H);
}

QpccProblem::Matrix QpccProblem::jac_g(const VectorRef& x) const {
  const Vector G = m_E * x + m_e0;
  const Vector H = m_F * x + m_f0;
  if (m_mode == ComplementarityMode::Aggregate) {
    return (m_E.transpose() * H + m_F.transpose() * G).transpose();
  }
  return H.asDiagonal() * m_E + G.asDiagonal() * m_F;
}

QpccProblem::Matrix QpccProblem::hess_gl(const VectorRef&,
                                         const VectorRef& kappa) const {
  if (m_mode == ComplementarityMode::Aggregate) {
    return kappa(0) * (m_E.transpose() * m_F + m_F.transpose() * m_E);
  }
  const Matrix W = m_E.transpose() * kappa.asDiagonal() * m_F;
  return W + W.transpose();
}

QpccProblem make_canonical(int pair_count) {
  if (pair_count < 1) {
    throw std::invalid_argument{"make_canonical: pair_count must be ≥ 1"};
  }
  const Eigen::Index k = pair_count;
  const Eigen::Index n = 2 * k;
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(k, n);
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(k, n);
  E.leftCols(k).setIdentity();
  F.rightCols(k).setIdentity();
  return QpccProblem{Eigen::MatrixXd::Identity(n, n),
                     -Eigen::VectorXd::Ones(n),
                     std::move(E),
                     Eigen::VectorXd::Zero(k),
                     std::move(F),
                     Eigen::VectorXd::Zero(k),
                     ComplementarityMode::Aggregate,
                     std::vector<BoundSign>(n, BoundSign::NonNegative),
                     0.5 * static_cast<double>(n)};
}

namespace {

double rel_err(double analytic, double fd) {
  return std::abs(analytic - fd) / std::max(1.0, std::abs(fd));
}

template <typename Derived>
Eigen::Index first_nonfinite(const Eigen::MatrixBase<Derived>& A) {
  for (Eigen::Index i = 0; i < A.size(); ++i) {
    if (!std::isfinite(A.derived().data()[i])) {
      return i;
    }
  }
  return -1;
}

}  // namespace

FiniteDiffReport finite_diff_check(const MpccOracle& oracle,
                                   const Eigen::VectorXd& x, double step,
                                   double tol) {
  const Eigen::Index n = oracle.n();
  const Eigen::Index dg = oracle.d_g();
  if (x.size() != n || !(step > 0)) {
    throw std::invalid_argument{"finite_diff_check: bad dimension or step"};
  }
  const auto& bounds = oracle.bounds();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (bounds[i] != BoundSign::Free && !(std::abs(x(i)) > step)) {
      throw std::invalid_argument{
          "finite_diff_check: x too close to a bound at coordinate " +
          std::to_string(i)};
    }
  }

  FiniteDiffReport report;
  Eigen::VectorXd kappa(dg);
  for (Eigen::Index i = 0; i < dg; ++i) {
    kappa(i) = 1.0 + static_cast<double>(i) / static_cast<double>(dg);
  }

  const Eigen::VectorXd grad = oracle.grad_f(x);
  const Eigen::MatrixXd jac = oracle.jac_g(x);
  const Eigen::MatrixXd hf = oracle.hess_f(x);
  const Eigen::MatrixXd hgl = oracle.hess_gl(x, kappa);

  auto fail = [&](const std::string& what, Eigen::Index index) {
    report.pass = false;
    report.failure = what;
    report.failure_index = index;
    return report;
  };
  if (auto i = first_nonfinite(grad); i >= 0) return fail("grad_f", i);
  if (auto i = first_nonfinite(jac); i >= 0) return fail("jac_g", i);
  if (auto i = first_nonfinite(hf); i >= 0) return fail("hess_f", i);
  if (auto i = first_nonfinite(hgl); i >= 0) return fail("hess_gl", i);

  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXd xp = x;
    Eigen::VectorXd xm = x;
    xp(j) += step;
    xm(j) -= step;

    const double fp = oracle.eval_f(xp);
    const double fm = oracle.eval_f(xm);
    const Eigen::VectorXd gp = oracle.eval_g(xp);
    const Eigen::VectorXd gm = oracle.eval_g(xm);
    const Eigen::VectorXd dfp = oracle.grad_f(xp);
    const Eigen::VectorXd dfm = oracle.grad_f(xm);
    const Eigen::VectorXd jkp = oracle.jac_g(xp).transpose() * kappa;
    const Eigen::VectorXd jkm = oracle.jac_g(xm).transpose() * kappa;
    if (!std::isfinite(fp) || !std::isfinite(fm)) return fail("eval_f", j);
    if (!gp.allFinite() || !gm.allFinite()) return fail("eval_g", j);

    report.grad_f_error =
        std::max(report.grad_f_error, rel_err(grad(j), (fp - fm) / (2 * step)));
    const Eigen::VectorXd dg_fd = (gp - gm) / (2 * step);
    const Eigen::VectorXd dgrad_fd = (dfp - dfm) / (2 * step);
    const Eigen::VectorXd djk_fd = (jkp - jkm) / (2 * step);
    for (Eigen::Index i = 0; i < dg; ++i) {
      report.jac_g_error = std::max(report.jac_g_error, rel_err(jac(i, j), dg_fd(i)));
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      report.hess_f_error =
          std::max(report.hess_f_error, rel_err(hf(i, j), dgrad_fd(i)));
      report.hess_gl_error =
          std::max(report.hess_gl_error, rel_err(hgl(i, j), djk_fd(i)));
    }
  }

  report.pass = report.grad_f_error <= tol && report.jac_g_error <= tol &&
                report.hess_f_error <= tol && report.hess_gl_error <= tol;
  return report;
}

}  // namespace aladin
