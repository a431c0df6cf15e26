#include "gaugelab/states.hpp"

#include <Eigen/Eigenvalues>

namespace gaugelab {

State::State(FockSpace space, CMatrix density) : space_(std::move(space)), density_(std::move(density)) {
  const auto d = static_cast<Eigen::Index>(space_.dim());
  if (density_.rows() != d || density_.cols() != d) throw InvalidInput("state: density must be dim x dim");
  const double herm = max_abs(density_ - density_.adjoint());
  if (herm > kValidationTol) throw NumericalError("state: density is not Hermitian", herm);
  const double trace_dev = std::abs(density_.trace() - Complex(1.0));
  if (trace_dev > kValidationTol) throw NumericalError("state: density trace is not 1", trace_dev);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(density_, Eigen::EigenvaluesOnly);
  const double min_eig = eig.eigenvalues().minCoeff();
  if (min_eig < -kValidationTol) throw NumericalError("state: density has a negative eigenvalue", min_eig);
}

State State::pure(const FockSpace& space, const CVector& vector) {
  const double nrm = vector.norm();
  if (!(nrm > 0.0)) throw InvalidInput("pure state: zero vector");
  const CVector v = vector / nrm;
  return {space, v * v.adjoint()};
}

State State::maximally_mixed(const FockSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  return {space, CMatrix::Identity(d, d) / static_cast<double>(d)};
}

Complex evaluate(const State& omega, const FockOperator& a) {
  require_same_space(omega.space(), a.space(), "evaluate");
  // tr(rho A) without forming the product.
  return (omega.density().transpose().cwiseProduct(a.matrix())).sum();
}

Complex orbit_function_value(const State& omega, const GaugeField& g, const FockOperator& a) {
  return evaluate(omega, gauge_automorphism(gauge_inv(g), a));
}

State fock_state(const FockSpace& space) { return State::pure(space, vacuum_vector(space)); }

State conjugated(const State& omega, const FockOperator& implementer) {
  require_same_space(omega.space(), implementer.space(), "conjugated");
  const CMatrix& v = implementer.matrix();
  CMatrix rho = v * omega.density() * v.adjoint();
  // Re-Hermitize against rounding drift.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return {omega.space(), std::move(rho)};
}

}  // namespace gaugelab
