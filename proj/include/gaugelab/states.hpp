#pragma once

#include "gaugelab/fock.hpp"

namespace gaugelab {

/// A state on the Fock algebra, stored as its density matrix.
/// Hermitian, positive semidefinite and unit trace within 1e-10.
class State {
 public:
  State(FockSpace space, CMatrix density);

  /// Rank-one state |v><v| / <v, v>.
  static State pure(const FockSpace& space, const CVector& vector);
  static State maximally_mixed(const FockSpace& space);

  const FockSpace& space() const noexcept { return space_; }
  const CMatrix& density() const noexcept { return density_; }

 private:
  FockSpace space_;
  CMatrix density_;
};

/// omega(A) = tr(density A).
Complex evaluate(const State& omega, const FockOperator& a);

/// f^A(g) = omega(gamma_{g^-1}(A)).
Complex orbit_function_value(const State& omega, const GaugeField& g, const FockOperator& a);

/// Projector onto the zero-particle vector.
State fock_state(const FockSpace& space);

/// The state transported by a Fock unitary: A -> omega(V* A V).
State conjugated(const State& omega, const FockOperator& implementer);

}  // namespace gaugelab
