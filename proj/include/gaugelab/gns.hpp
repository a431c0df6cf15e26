#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gaugelab/states.hpp"

namespace gaugelab {

// Largest Fock dimension accepted for the full matrix-unit basis.
inline constexpr std::size_t kMaxFullAlgebraDim = 32;

/// Spanning set of a unital *-subalgebra of the Fock operators.
///
/// The span is tracked through an orthonormal basis of its vectorization, so
/// membership residuals can be computed for any operator.
class AlgebraBasis {
 public:
  /// Matrix units |S><T| in column-major order (element S + D * T).
  static AlgebraBasis full_matrix_algebra(const FockSpace& space);

  /// Words of length <= max_word_length in the generators and their adjoints,
  /// plus the identity, pruned to a linearly independent set. Throws if the
  /// result is not closed under adjoints.
  static AlgebraBasis from_generators(const FockSpace& space, const std::vector<FockOperator>& generators,
                                      int max_word_length);

  const FockSpace& space() const noexcept { return space_; }
  const std::vector<FockOperator>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool is_full() const noexcept { return full_; }

  /// Hilbert-Schmidt distance from `a` to the span.
  double span_residual(const CMatrix& a) const;
  /// Largest span residual of A_i A_j over all basis pairs.
  double closure_residual() const;

 private:
  AlgebraBasis(FockSpace space, std::vector<FockOperator> elements, bool full, CMatrix span);

  FockSpace space_;
  std::vector<FockOperator> elements_;
  bool full_;
  CMatrix span_;  // orthonormal columns spanning vec(elements); empty when full
};

/// Orthonormalized GNS data (pi, H, Omega) of a state on an algebra.
///
/// Orthonormal GNS vector e_a is the class xi(E_a) of E_a = sum_j W_ja A_j,
/// where W comes from the kept eigenvectors of the Gram matrix
/// G_ij = omega(A_i* A_j) scaled by 1/sqrt(eigenvalue). The discarded
/// eigenvectors span the left kernel N_omega.
struct GnsTriple {
  std::size_t dim = 0;
  /// pi(A_i) for every basis element, in basis order. Empty when the basis is
  /// too large to store eagerly (see gns_represent).
  std::vector<CMatrix> rep;
  CVector cyclic;
  RVector gram_spectrum;  // descending
  double gram_rank_tol = 1e-10;

  CMatrix representatives;  // column a = vec(E_a)
  CMatrix hs_vectors;       // column a = vec(E_a rho^{1/2}); <e_b, e_a> = hs_b* hs_a
  CMatrix sqrt_density;
};

struct GnsOptions {
  double gram_rank_tol = 1e-10;
  /// pi is stored for all basis elements when size * dim^2 stays below this.
  std::size_t eager_rep_budget = std::size_t{1} << 22;
  /// Closure of non-full bases is verified when true.
  bool check_closure = true;
};

/// GNS construction. Throws NumericalError when the Gram matrix is not
/// positive semidefinite beyond tolerance or the basis is not closed under
/// products.
GnsTriple gns_construct(const State& omega, const AlgebraBasis& alg, const GnsOptions& options = {});

/// pi(A) for any A in the span of the basis.
CMatrix gns_represent(const GnsTriple& gns, const FockOperator& a);
/// Coordinates of xi(A) in the orthonormal GNS basis.
CVector gns_vector(const GnsTriple& gns, const FockOperator& a);

struct CovariantUnitary {
  CMatrix u;
  double invariance_defect = 0.0;    // max_i |omega(gamma_g(A_i)) - omega(A_i)|
  double unitarity_residual = 0.0;   // ||U* U - I||
  double vacuum_residual = 0.0;      // ||U Omega - Omega||
  double covariance_residual = 0.0;  // max_i ||U pi(A_i) U* - pi(gamma_g(A_i))||
};

// Invariance threshold required before U_g is built.
inline constexpr double kCovarianceInvarianceTol = 1e-8;

/// U_g xi(A) = xi(gamma_g(A)) in GNS coordinates. Throws NumericalError with
/// the measured defect when omega is not gamma_g-invariant within 1e-8.
CovariantUnitary covariant_unitary(const GnsTriple& gns, const State& omega, const GaugeField& g,
                                   const AlgebraBasis& alg);

struct ContinuityRow {
  double t;
  double displacement;  // ||U_{g_t} xi(A) - xi(A)||
  double bound;         // ||gamma_{g_t}(A) - A||
};

/// Evaluates both sides of ||U_g xi(A) - xi(A)|| <= ||gamma_g(A) - A|| along
/// a family of gauge fields.
std::vector<ContinuityRow> strong_continuity_probe(const GnsTriple& gns, const State& omega,
                                                   const std::vector<double>& times,
                                                   const std::vector<GaugeField>& path,
                                                   const FockOperator& a, const AlgebraBasis& alg);

/// g_t(x) = exp(i t H_x) for Hermitian H_x.
GaugeField exponential_path(const LatticeSpec& spec, const std::vector<CMatrix>& generators, double t);

}  // namespace gaugelab
