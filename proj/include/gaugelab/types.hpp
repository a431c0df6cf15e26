#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gaugelab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Validation tolerance for unitarity, determinants and state invariants.
inline constexpr double kValidationTol = 1e-10;
// Tolerance for exact arithmetic identities (group axioms, CAR relations).
inline constexpr double kArithmeticTol = 1e-12;

/// Thrown when an operation receives inputs that violate its preconditions
/// (mismatched lattices, wrong group kind, size caps).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical construction detects a violated mathematical
/// precondition (non-unitary input, non-invariant state, non-closed basis).
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double measured)
      : std::runtime_error(what + " (measured " + std::to_string(measured) + ")"),
        measured_(measured) {}

  double measured() const noexcept { return measured_; }

 private:
  double measured_;
};

// Spectral norm of a dense matrix (largest singular value).
double spectral_norm(const CMatrix& a);

// Trace norm (sum of singular values).
double trace_norm(const CMatrix& a);

// Sup-norm of the difference, for quick residual checks.
inline double max_abs(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

}  // namespace gaugelab
