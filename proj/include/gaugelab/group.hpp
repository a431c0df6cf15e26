#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gaugelab/lattice.hpp"
#include "gaugelab/types.hpp"

namespace gaugelab {

enum class GroupFamily {
  Unitary,         // U(n)
  SpecialUnitary,  // SU(n)
  Torus,           // diagonal unitaries, the maximal torus of U(n); U(1) at n = 1
  Cyclic,          // Z_q embedded as q-th roots of unity times the identity
};

struct GroupKind {
  GroupFamily family = GroupFamily::Unitary;
  int q = 0;  // only meaningful for Cyclic

  static GroupKind unitary() { return {GroupFamily::Unitary, 0}; }
  static GroupKind special_unitary() { return {GroupFamily::SpecialUnitary, 0}; }
  static GroupKind torus() { return {GroupFamily::Torus, 0}; }
  static GroupKind cyclic(int q);

  std::string name() const;
  static GroupKind parse(const std::string& text);

  friend bool operator==(const GroupKind&, const GroupKind&) = default;
};

/// Site-indexed n x n complex matrices; the ambient C(X, M(n)).
struct MatrixField {
  LatticeSpec spec;
  std::vector<CMatrix> values;

  MatrixField(LatticeSpec s, std::vector<CMatrix> v);
  static MatrixField identity(const LatticeSpec& spec);

  MatrixField operator-(const MatrixField& other) const;
  MatrixField operator*(const MatrixField& other) const;
  MatrixField scaled(Complex s) const;
};

/// Checks that `u` is unitary within `tol` in operator norm; throws otherwise.
void require_unitary(const CMatrix& u, double tol, const char* where);
bool is_unitary(const CMatrix& u, double tol = kValidationTol);

/// A lattice gauge transformation: one unitary of the given kind per site.
/// Immutable after construction; the constructor validates every site.
class GaugeField {
 public:
  GaugeField(LatticeSpec spec, GroupKind kind, std::vector<CMatrix> values);

  static GaugeField identity(const LatticeSpec& spec, GroupKind kind);
  static GaugeField constant(const LatticeSpec& spec, GroupKind kind, const CMatrix& u);

  const LatticeSpec& spec() const noexcept { return field_.spec; }
  GroupKind kind() const noexcept { return kind_; }
  const std::vector<CMatrix>& values() const noexcept { return field_.values; }
  const CMatrix& at(std::size_t site) const { return field_.values.at(site); }
  const MatrixField& field() const noexcept { return field_; }

  MatrixField operator-(const GaugeField& other) const { return field_ - other.field_; }

 private:
  MatrixField field_;
  GroupKind kind_;
};

GaugeField gauge_mul(const GaugeField& g, const GaugeField& h);
GaugeField gauge_inv(const GaugeField& g);

/// max_x || g(x) - h(x) ||_op, the C*-norm distance on C(X, M(n)).
double sup_norm_dist(const GaugeField& g, const GaugeField& h);
double sup_norm(const MatrixField& f);

/// (alpha_a g)(x) = g(x + a mod dims). Requires uniform weights.
GaugeField translate(const GaugeField& g, const std::vector<int>& shift);

/// True iff every site value is an n-th root of unity times the identity,
/// i.e. g lies in the kernel of SU(n) -> U(n)/T at every site.
bool center_kernel_check(const GaugeField& g);

}  // namespace gaugelab
