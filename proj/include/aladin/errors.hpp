#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace aladin {

/// A factorization met a pivot below the relative singularity threshold.
class LinearSolverSingular : public std::runtime_error {
 public:
  LinearSolverSingular(const std::string& what, Eigen::Index pivot)
      : std::runtime_error{what}, m_pivot{pivot} {}

  /// Index of the offending pivot, or -1 when not applicable.
  Eigen::Index pivot() const { return m_pivot; }

 private:
  Eigen::Index m_pivot;
};

/// An inner Newton solve ran out of iterations before reaching tolerance.
class InnerSolverFailure : public std::runtime_error {
 public:
  InnerSolverFailure(const std::string& what, int iterations, double residual)
      : std::runtime_error{what},
        m_iterations{iterations},
        m_residual{residual} {}

  int iterations() const { return m_iterations; }
  double residual() const { return m_residual; }

 private:
  int m_iterations;
  double m_residual;
};

/// A barrier argument left its domain or an oracle returned a non-finite
/// value.
class DomainError : public std::domain_error {
 public:
  DomainError(const std::string& what, Eigen::Index index)
      : std::domain_error{what}, m_index{index} {}

  /// Offending coordinate, or -1 when not applicable.
  Eigen::Index index() const { return m_index; }

 private:
  Eigen::Index m_index;
};

}  // namespace aladin
