#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "aladin/problem.hpp"
#include "support.hpp"

namespace aladin {
namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) {
    out(i++) = x;
  }
  return out;
}

TEST(Canonical, ValuesAtReferencePoints) {
  const QpccProblem p1 = make_canonical(1);
  EXPECT_EQ(p1.n(), 2);
  EXPECT_EQ(p1.d_g(), 1);
  EXPECT_DOUBLE_EQ(p1.eval_f(vec({1, 1})), 0.0);
  EXPECT_DOUBLE_EQ(p1.eval_g(vec({1, 1}))(0), 1.0);
  EXPECT_DOUBLE_EQ(p1.eval_f(vec({1, 0})), 0.5);
  EXPECT_DOUBLE_EQ(p1.eval_g(vec({1, 0}))(0), 0.0);

  const QpccProblem p10 = make_canonical(10);
  const Eigen::VectorXd e = Eigen::VectorXd::Ones(20);
  EXPECT_EQ(p10.n(), 20);
  EXPECT_DOUBLE_EQ(p10.eval_f(e), 0.0);
  EXPECT_DOUBLE_EQ(p10.eval_g(e)(0), 10.0);
}

TEST(Canonical, RejectsNonPositivePairCount) {
  EXPECT_THROW(make_canonical(0), std::invalid_argument);
}

TEST(Qpcc, ComponentwiseProducts) {
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(2, 2);
  const QpccProblem p{I,
                      Eigen::VectorXd::Zero(2),
                      I,
                      Eigen::VectorXd::Zero(2),
                      I,
                      Eigen::VectorXd::Ones(2),
                      ComplementarityMode::Componentwise,
                      {BoundSign::Free, BoundSign::Free}};
  const Eigen::VectorXd g = p.eval_g(vec({2, 3}));
  EXPECT_DOUBLE_EQ(g(0), 6.0);
  EXPECT_DOUBLE_EQ(g(1), 12.0);
}

TEST(Qpcc, RejectsInconsistentShapes) {
  EXPECT_THROW((QpccProblem{Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(3),
                            Eigen::MatrixXd::Zero(1, 2), Eigen::VectorXd::Zero(1),
                            Eigen::MatrixXd::Zero(1, 2), Eigen::VectorXd::Zero(1),
                            ComplementarityMode::Aggregate,
                            {BoundSign::Free, BoundSign::Free}}),
               std::invalid_argument);
}

TEST(FiniteDiff, CanonicalPasses) {
  const auto report = finite_diff_check(make_canonical(1), vec({0.5, 0.5}), 1e-6, 1e-5);
  EXPECT_TRUE(report.pass);
}

TEST(FiniteDiff, RandomInstancesPass) {
  std::mt19937_64 rng{11};
  for (int i = 0; i < 10; ++i) {
    const auto mode = i % 2 ? ComplementarityMode::Aggregate
                            : ComplementarityMode::Componentwise;
    const QpccProblem p = test::random_qpcc(rng, 6 + i, 1 + i % 3, mode);
    const auto report = finite_diff_check(p, test::random_vector(rng, p.n()), 1e-6, 1e-5);
    EXPECT_TRUE(report.pass) << "instance " << i;
  }
}

/// Canonical oracle with the sign of grad_f flipped.
class FlippedGradient final : public MpccOracle {
 public:
  explicit FlippedGradient(bool zero) : m_zero{zero}, m_base{make_canonical(1)} {}
  Eigen::Index n() const override { return 2; }
  Eigen::Index d_g() const override { return 1; }
  double eval_f(const VectorRef& x) const override {
    return m_zero ? 0.0 : x.sum();
  }
  Vector grad_f(const VectorRef&) const override {
    return m_zero ? Vector::Zero(2) : Vector(-Vector::Ones(2));
  }
  Matrix hess_f(const VectorRef&) const override { return Matrix::Zero(2, 2); }
  Vector eval_g(const VectorRef& x) const override {
    return m_zero ? Vector::Zero(1) : m_base.eval_g(x);
  }
  Matrix jac_g(const VectorRef& x) const override {
    return m_zero ? Matrix::Zero(1, 2) : m_base.jac_g(x);
  }
  Matrix hess_gl(const VectorRef& x, const VectorRef& k) const override {
    return m_zero ? Matrix::Zero(2, 2) : m_base.hess_gl(x, k);
  }
  const std::vector<BoundSign>& bounds() const override { return m_base.bounds(); }

 private:
  bool m_zero;
  QpccProblem m_base;
};

TEST(FiniteDiff, DetectsWrongGradientSign) {
  const auto report = finite_diff_check(FlippedGradient{false}, vec({0.3, 0.4}), 1e-6, 1e-5);
  EXPECT_FALSE(report.pass);
  EXPECT_NEAR(report.grad_f_error, 2.0, 1e-6);
}

TEST(FiniteDiff, ZeroOraclePassesExactly) {
  const auto report = finite_diff_check(FlippedGradient{true}, vec({0.3, 0.4}), 1e-6, 1e-5);
  EXPECT_TRUE(report.pass);
  EXPECT_EQ(report.grad_f_error, 0);
  EXPECT_EQ(report.jac_g_error, 0);
  EXPECT_EQ(report.hess_f_error, 0);
  EXPECT_EQ(report.hess_gl_error, 0);
}

class NanObjective final : public MpccOracle {
 public:
  Eigen::Index n() const override { return 2; }
  Eigen::Index d_g() const override { return 1; }
  double eval_f(const VectorRef&) const override { return 0; }
  Vector grad_f(const VectorRef&) const override {
    Vector g = Vector::Zero(2);
    g(1) = std::numeric_limits<double>::quiet_NaN();
    return g;
  }
  Matrix hess_f(const VectorRef&) const override { return Matrix::Zero(2, 2); }
  Vector eval_g(const VectorRef&) const override { return Vector::Zero(1); }
  Matrix jac_g(const VectorRef&) const override { return Matrix::Zero(1, 2); }
  Matrix hess_gl(const VectorRef&, const VectorRef&) const override {
    return Matrix::Zero(2, 2);
  }
  const std::vector<BoundSign>& bounds() const override { return m_bounds; }

 private:
  std::vector<BoundSign> m_bounds{BoundSign::Free, BoundSign::Free};
};

TEST(FiniteDiff, ReportsNonFiniteEntry) {
  const auto report = finite_diff_check(NanObjective{}, vec({0, 0}), 1e-6, 1e-5);
  EXPECT_FALSE(report.pass);
  EXPECT_FALSE(report.failure.empty());
  EXPECT_EQ(report.failure_index, 1);
}

TEST(Json, LoadsProblem) {
  std::istringstream in{R"({
    "Q": [[1, 0], [0, 1]], "c": [-1, -1], "c0": 1,
    "E": [[1, 0]], "e0": [0], "F": [[0, 1]], "f0": [0],
    "mode": "aggregate", "bounds": ["nonneg", "nonpos"]
  })"};
  const QpccProblem p = load_qpcc_json(in);
  EXPECT_EQ(p.n(), 2);
  EXPECT_EQ(p.bounds()[1], BoundSign::NonPositive);
  EXPECT_DOUBLE_EQ(p.eval_f(vec({1, 1})), 0.0);
  EXPECT_DOUBLE_EQ(p.eval_g(vec({2, 3}))(0), 6.0);
}

TEST(Json, MalformedInputNamesLocation) {
  std::istringstream in{R"({"Q": [[1, 0], [0, 1]], "c": [1, )"};
  try {
    load_qpcc_json(in);
    FAIL() << "expected ProblemFormatError";
  } catch (const ProblemFormatError& e) {
    EXPECT_NE(std::string{e.what()}.find("byte"), std::string::npos) << e.what();
  }
}

TEST(Json, RejectsUnknownBound) {
  std::istringstream in{R"({
    "Q": [[1]], "c": [0], "E": [[1]], "e0": [0], "F": [[1]], "f0": [0],
    "mode": "aggregate", "bounds": ["sideways"]
  })"};
  EXPECT_THROW(load_qpcc_json(in), ProblemFormatError);
}

}  // namespace
}  // namespace aladin
