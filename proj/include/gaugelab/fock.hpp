#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "gaugelab/group.hpp"

namespace gaugelab {

// Global cap on the number of fermionic modes (Fock dimension 4096).
inline constexpr std::size_t kMaxModes = 12;
// Cap for experiments that conjugate dense Fock operators repeatedly.
inline constexpr std::size_t kMaxConjugationModes = 10;

/// One-particle vector psi in L^2(X, mu, C^n). Amplitudes are stored
/// site-major, color-minor: values[x * n + c] = psi(x)_c.
class OneParticleVector {
 public:
  OneParticleVector(LatticeSpec spec, CVector values);
  static OneParticleVector zero(const LatticeSpec& spec);
  /// The normalized vector concentrated on one (site, color) mode.
  static OneParticleVector basis_mode(const LatticeSpec& spec, std::size_t mode);
  /// Builds psi from coordinates in the orthonormal mode basis.
  static OneParticleVector from_coordinates(const LatticeSpec& spec, const CVector& coords);

  const LatticeSpec& spec() const noexcept { return spec_; }
  const CVector& values() const noexcept { return values_; }

  /// c_(x,c) = sqrt(w_x) psi(x)_c, coordinates in the orthonormal mode basis.
  CVector coordinates() const;

  double norm() const;

  OneParticleVector operator+(const OneParticleVector& other) const;
  OneParticleVector operator-(const OneParticleVector& other) const;
  OneParticleVector scaled(Complex s) const;

 private:
  LatticeSpec spec_;
  CVector values_;
};

/// (psi, xi) = sum_x w_x conj(psi(x)) . xi(x); antilinear in the first slot.
Complex inner(const OneParticleVector& psi, const OneParticleVector& xi);

/// (rho(F) psi)(x) = F(x) psi(x).
OneParticleVector apply(const MatrixField& f, const OneParticleVector& psi);

/// Fermionic Fock space over the lattice modes.
///
/// Mode k = x * n + c. Basis vector |S> for an occupation subset S is stored at
/// index sum_{k in S} 2^k, and |S> = a*_{k1} ... a*_{kp} |0> with k1 < ... < kp.
/// The Jordan-Wigner string of a_k counts occupied modes j < k.
class FockSpace {
 public:
  explicit FockSpace(LatticeSpec spec);

  const LatticeSpec& spec() const noexcept { return spec_; }
  std::size_t modes() const noexcept { return modes_; }
  std::size_t dim() const noexcept { return std::size_t{1} << modes_; }
  std::size_t mode(std::size_t site, int color) const {
    return site * static_cast<std::size_t>(spec_.colors()) + static_cast<std::size_t>(color);
  }

  /// Basis indices grouped by particle number, each group ascending.
  std::vector<std::vector<std::uint32_t>> sectors() const;

  friend bool operator==(const FockSpace& a, const FockSpace& b) { return a.spec_ == b.spec_; }

 private:
  LatticeSpec spec_;
  std::size_t modes_;
};

void require_same_space(const FockSpace& a, const FockSpace& b, const char* where);

/// Dense operator on Fock space.
class FockOperator {
 public:
  FockOperator(FockSpace space, CMatrix entries);
  static FockOperator identity(const FockSpace& space);
  static FockOperator zero(const FockSpace& space);

  const FockSpace& space() const noexcept { return space_; }
  const CMatrix& matrix() const noexcept { return entries_; }

  FockOperator adjoint() const { return {space_, entries_.adjoint()}; }
  FockOperator operator*(const FockOperator& other) const;
  FockOperator operator+(const FockOperator& other) const;
  FockOperator operator-(const FockOperator& other) const;
  FockOperator scaled(Complex s) const { return {space_, s * entries_}; }

 private:
  FockSpace space_;
  CMatrix entries_;
};

/// Jordan-Wigner annihilator of a single mode.
FockOperator mode_annihilator(const FockSpace& space, std::size_t mode);

/// a(psi) = sum_k conj(c_k) a_k with c the orthonormal coordinates of psi.
FockOperator annihilator(const FockSpace& space, const OneParticleVector& psi);
inline FockOperator creator(const FockSpace& space, const OneParticleVector& psi) {
  return annihilator(space, psi).adjoint();
}

struct Anticommutators {
  FockOperator aa;       // {a(psi), a(xi)}
  FockOperator a_adag;   // {a(psi), a(xi)*}
};

Anticommutators car_anticommutators(const FockSpace& space, const OneParticleVector& psi,
                                    const OneParticleVector& xi);

/// rho(F) in the orthonormal mode basis: block diagonal, F(x) on site x.
CMatrix rho_matrix(const MatrixField& f);
inline CMatrix rho_matrix(const GaugeField& g) { return rho_matrix(g.field()); }

/// Gamma(U) with <S|Gamma(U)|T> = det U[S, T] for |S| = |T| and 0 otherwise.
/// Requires U unitary within 1e-10.
FockOperator second_quantize(const FockSpace& space, const CMatrix& u);

/// Gamma(rho(g)), the Fock-space unitary implementing gamma_g.
FockOperator gauge_unitary(const FockSpace& space, const GaugeField& g);

/// V X V*, exploiting the particle-number block sparsity of implementers.
CMatrix sandwich(const CMatrix& v, const CMatrix& x);

/// gamma_g(A) = Gamma(rho(g)) A Gamma(rho(g))*.
FockOperator gauge_automorphism(const GaugeField& g, const FockOperator& a);
/// Same, with a precomputed implementer Gamma(rho(g)).
FockOperator conjugate(const FockOperator& implementer, const FockOperator& a);

double op_norm(const FockOperator& a);

/// Mode permutation sending site x + a to site x (colors fixed), so that
/// T rho(g) T* = rho(translate(g, a)). Requires uniform weights.
CMatrix translation_unitary(const std::vector<int>& shift, const LatticeSpec& spec);

/// The zero-particle vector.
CVector vacuum_vector(const FockSpace& space);

}  // namespace gaugelab
