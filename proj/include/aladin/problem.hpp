#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace aladin {

/// Sign restriction on a single decision variable.
enum class BoundSign { NonNegative, NonPositive, Free };

/// +1 for NonNegative, −1 for NonPositive, 0 for Free.
constexpr int orientation(BoundSign sign) {
  switch (sign) {
    case BoundSign::NonNegative:
      return 1;
    case BoundSign::NonPositive:
      return -1;
    case BoundSign::Free:
      return 0;
  }
  return 0;
}

/**
 * Evaluation oracle for
 *
 *   min f(x)  s.t.  g(x) = G(x)ᵀH(x) = 0,  sign bounds on x.
 *
 * Implementations must be stateless so that concurrent calls are safe.
 */
class MpccOracle {
 public:
  using Vector = Eigen::VectorXd;
  using Matrix = Eigen::MatrixXd;
  using VectorRef = Eigen::Ref<const Eigen::VectorXd>;

  virtual ~MpccOracle() = default;

  virtual Eigen::Index n() const = 0;
  virtual Eigen::Index d_g() const = 0;

  virtual double eval_f(const VectorRef& x) const = 0;
  virtual Vector grad_f(const VectorRef& x) const = 0;
  virtual Matrix hess_f(const VectorRef& x) const = 0;

  virtual Vector eval_g(const VectorRef& x) const = 0;
  /// d_g × n
  virtual Matrix jac_g(const VectorRef& x) const = 0;
  /// Hessian of κᵀg(x).
  virtual Matrix hess_gl(const VectorRef& x, const VectorRef& kappa) const = 0;

  virtual const std::vector<BoundSign>& bounds() const = 0;
};

/// How the complementarity pairs are combined into g.
enum class ComplementarityMode { Aggregate, Componentwise };

/**
 * Quadratic objective with bilinear complementarity:
 *
 *   f(x) = ½xᵀQx + cᵀx + c0,   G(x) = Ex + e0,   H(x) = Fx + f0.
 *
 * In Aggregate mode g(x) = G(x)ᵀH(x) is a scalar; in Componentwise mode
 * gᵢ(x) = Gᵢ(x)Hᵢ(x).
 */
class QpccProblem final : public MpccOracle {
 public:
  QpccProblem(Matrix Q, Vector c, Matrix E, Vector e0, Matrix F, Vector f0,
              ComplementarityMode mode, std::vector<BoundSign> bounds,
              double c0 = 0.0);

  Eigen::Index n() const override { return m_c.size(); }
  Eigen::Index d_g() const override;

  double eval_f(const VectorRef& x) const override;
  Vector grad_f(const VectorRef& x) const override;
  Matrix hess_f(const VectorRef& x) const override;
  Vector eval_g(const VectorRef& x) const override;
  Matrix jac_g(const VectorRef& x) const override;
  Matrix hess_gl(const VectorRef& x, const VectorRef& kappa) const override;
  const std::vector<BoundSign>& bounds() const override { return m_bounds; }

  const Matrix& Q() const { return m_Q; }
  const Vector& c() const { return m_c; }
  double c0() const { return m_c0; }
  const Matrix& E() const { return m_E; }
  const Vector& e0() const { return m_e0; }
  const Matrix& F() const { return m_F; }
  const Vector& f0() const { return m_f0; }
  ComplementarityMode mode() const { return m_mode; }

 private:
  Matrix m_Q;
  Vector m_c;
  Matrix m_E;
  Vector m_e0;
  Matrix m_F;
  Vector m_f0;
  ComplementarityMode m_mode;
  std::vector<BoundSign> m_bounds;
  double m_c0;
};

/**
 * min ½‖x̂ − e‖² + ½‖x̃ − e‖²  s.t.  x̂ᵀx̃ = 0,  x ⪰ 0,  x = [x̂; x̃].
 *
 * @param pair_count Number of complementarity pairs k; n = 2k.
 */
QpccProblem make_canonical(int pair_count);

/// Malformed or inconsistent problem description.
class ProblemFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Parses a JSON document with keys Q, c, E, e0, F, f0 (row-major nested
 * arrays), mode ("aggregate" | "componentwise"), bounds (array of
 * "nonneg" | "nonpos" | "free") and the optional objective constant c0.
 *
 * @throws ProblemFormatError with the parse location on malformed input.
 */
QpccProblem load_qpcc_json(std::istream& in);
QpccProblem load_qpcc_json_file(const std::string& path);

/// Per-derivative maximum relative errors against central differences.
struct FiniteDiffReport {
  double grad_f_error = 0;
  double jac_g_error = 0;
  double hess_f_error = 0;
  double hess_gl_error = 0;
  bool pass = false;
  /// Set when an oracle returned a non-finite entry.
  std::string failure;
  Eigen::Index failure_index = -1;
};

/**
 * Compares grad_f, jac_g, hess_f and hess_gl with central differences of
 * step h. Errors are |analytic − fd| / max(1, |fd|) entrywise; hess_gl uses
 * κᵢ = 1 + i/d_g.
 */
FiniteDiffReport finite_diff_check(const MpccOracle& oracle,
                                   const Eigen::VectorXd& x, double step,
                                   double tol);

}  // namespace aladin
