#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <Eigen/LU>

#include "aladin/errors.hpp"
#include "aladin/reformulate.hpp"
#include "support.hpp"

namespace aladin {
namespace {

TEST(Coupling, BlockStructure) {
  const auto cm = build_coupling(2, 1);
  EXPECT_EQ(cm.A1, Eigen::MatrixXd::Identity(4, 4));
  Eigen::MatrixXd A2 = Eigen::MatrixXd::Zero(4, 2);
  A2(0, 0) = A2(1, 1) = -1;
  EXPECT_EQ(cm.A2, A2);
  Eigen::MatrixXd A3 = Eigen::MatrixXd::Zero(4, 2);
  A3(2, 0) = A3(3, 1) = -1;
  EXPECT_EQ(cm.A3, A3);
}

TEST(Coupling, ResidualMatchesMatrices) {
  std::mt19937_64 rng{3};
  const auto cm = build_coupling(5, 2);
  const Eigen::VectorXd a = test::random_vector(rng, 9);
  const Eigen::VectorXd b = test::random_vector(rng, 5);
  const Eigen::VectorXd c = test::random_vector(rng, 4);
  EXPECT_LE((coupling_residual(a, b, c) - (cm.A1 * a + cm.A2 * b + cm.A3 * c)).norm(), 1e-15);
}

TEST(Coupling, ConsensusAndZeroReplicas) {
  SplitState s = SplitState::zeros(3, 2);
  s.x << 1, 2, 3;
  s.beta = s.x;
  s.q << 4, 5;
  s.p = s.q;
  s.m_copy << 6, 7;
  s.n_slack = s.m_copy;
  EXPECT_EQ(coupling_residual(s.alpha(), s.beta, s.gamma()).norm(), 0);

  Eigen::VectorXd a(3);
  a << 1, 2, 3;
  EXPECT_EQ(coupling_residual(a, Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(2)), a);
}

TEST(SplitState, AlphaGammaRoundTrip) {
  SplitState s = SplitState::zeros(2, 1);
  Eigen::VectorXd a(4);
  a << 1, 2, 3, 4;
  s.set_alpha(a);
  EXPECT_EQ(s.alpha(), a);
  EXPECT_EQ(s.q(0), 3);
  Eigen::VectorXd g(2);
  g << 5, 6;
  s.set_gamma(g);
  EXPECT_EQ(s.n_slack(0), 6);
}

TEST(Phi, Examples) {
  const QpccProblem p = make_canonical(1);
  Eigen::VectorXd alpha(4);
  alpha << 1, 1, 0.3, 0.2;
  Eigen::VectorXd gamma(2);
  gamma << 0.3, 0.2;
  EXPECT_DOUBLE_EQ(eval_phi(alpha, gamma, p, {}), 0.0);

  alpha << 0, 0, 1, 0;
  gamma << 0, 0;
  EXPECT_DOUBLE_EQ(eval_phi(alpha, gamma, p, {2, 1, 1, 1, 1}), 2.0);
}

TEST(Phi, MatchesStraightLineEvaluation) {
  std::mt19937_64 rng{9};
  const QpccProblem p = test::random_qpcc(rng, 5, 2, ComplementarityMode::Componentwise);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXd alpha = test::random_vector(rng, 9);
    const Eigen::VectorXd gamma = test::random_vector(rng, 4);
    const SplitWeights w{0.5 + trial, 2.0, 1, 1, 1};
    const Eigen::VectorXd x = alpha.head(5);
    const double f = 0.5 * x.dot(p.Q() * x) + p.c().dot(x) + p.c0();
    const double ref = f + 0.5 * w.wP * (alpha.segment(5, 2) - gamma.head(2)).squaredNorm() +
                       0.5 * w.wM * (alpha.tail(2) - gamma.tail(2)).squaredNorm();
    EXPECT_NEAR(eval_phi(alpha, gamma, p, w), ref, 1e-12 * std::max(1.0, std::abs(ref)));
  }
}

TEST(Varphi, Examples) {
  const SplitWeights unit{1, 1, 1, 1, 1};
  EXPECT_EQ(eval_varphi(Eigen::VectorXd::Constant(2, 5.0), {BoundSign::Free, BoundSign::Free}, unit),
            0.0);
  EXPECT_EQ(eval_varphi(Eigen::VectorXd::Zero(1), {BoundSign::NonNegative}, unit), 0.0);
  EXPECT_NEAR(eval_varphi(Eigen::VectorXd::Constant(1, -1.0), {BoundSign::NonPositive},
                          {1, 1, 1, 2, 1}),
              -2 * std::log(2.0), 1e-15);
  EXPECT_NEAR(-2 * std::log(2.0), -1.386294, 1e-6);
}

TEST(Varphi, DomainErrorNamesCoordinate) {
  Eigen::VectorXd beta(3);
  beta << 0, 0, -2;
  try {
    eval_varphi(beta, {BoundSign::Free, BoundSign::NonNegative, BoundSign::NonNegative},
                {1, 1, 1, 1, 1});
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_EQ(e.index(), 2);
  }
}

TEST(Psi, Examples) {
  EXPECT_EQ(eval_psi(Eigen::VectorXd::Zero(2), {1, 1, 1, 1, 10}), 0.0);
  Eigen::VectorXd gamma(2);
  gamma << 1, 0;
  EXPECT_NEAR(eval_psi(gamma, {1, 1, 1, 1, 10}), 10 - std::log(2.0), 1e-14);
  EXPECT_NEAR(10 - std::log(2.0), 9.306853, 1e-6);
  EXPECT_EQ(eval_psi(gamma, {1, 1, 1, 0, 0}), 0.0);
  gamma << -2, 0;
  EXPECT_THROW(eval_psi(gamma, {1, 1, 1, 1, 10}), DomainError);
}

TEST(LocalEquality, Examples) {
  const QpccProblem p = make_canonical(1);
  Eigen::VectorXd alpha(4);
  alpha << 1, 1, 1, 0;
  EXPECT_EQ(eval_local_equality(alpha, p)(0), 0.0);

  alpha << 2, 3, 0, 0;
  EXPECT_EQ(eval_local_equality(alpha, p)(0), 6.0);
  Eigen::MatrixXd C(1, 4);
  C << 3, 2, -1, 1;
  EXPECT_EQ(local_equality_jacobian(alpha, p), C);
}

TEST(LocalEquality, JacobianHasFullRowRank) {
  std::mt19937_64 rng{21};
  for (int trial = 0; trial < 10; ++trial) {
    const QpccProblem p = test::random_qpcc(rng, 6, 3, ComplementarityMode::Componentwise);
    const Eigen::MatrixXd C = local_equality_jacobian(test::random_vector(rng, 12), p);
    EXPECT_EQ(Eigen::FullPivLU<Eigen::MatrixXd>{C}.rank(), 3);
  }
}

}  // namespace
}  // namespace aladin
