#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "gaugelab/group.hpp"

namespace gaugelab {

// Largest enumerated group for which a full multiplication table is built.
inline constexpr std::size_t kMaxTableOrder = 4096;

/// An enumerated finite group of Z_q-valued gauge fields with its
/// multiplication table. Element i is the field with site exponents given by
/// the base-q digits of i (site 0 least significant).
class FiniteGroup {
 public:
  static FiniteGroup cyclic_gauge_fields(const LatticeSpec& spec, int q);

  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<GaugeField>& elements() const noexcept { return elements_; }
  const GaugeField& element(std::size_t i) const { return elements_.at(i); }
  std::size_t multiply(std::size_t a, std::size_t b) const { return table_[a * order() + b]; }
  std::size_t inverse(std::size_t a) const { return inverse_.at(a); }
  std::size_t identity() const noexcept { return identity_; }

  /// Index of a field of this group; throws if it is not an element.
  std::size_t index_of(const GaugeField& g) const;

 private:
  FiniteGroup(std::vector<GaugeField> elements, int q);

  std::vector<GaugeField> elements_;
  int q_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> inverse_;
  std::size_t identity_ = 0;
};

/// A finite group K with a normal subgroup H and the quotient L = K / H,
/// presented by a transversal and the quotient multiplication table.
class FiniteGroupExtension {
 public:
  /// Throws InvalidInput unless the predicate selects a normal subgroup.
  FiniteGroupExtension(FiniteGroup group, const std::function<bool(const GaugeField&)>& in_subgroup);

  /// K = Z_q gauge fields on the lattice, H = constant fields.
  static FiniteGroupExtension constant_subgroup(const LatticeSpec& spec, int q);

  const FiniteGroup& group() const noexcept { return group_; }
  const std::vector<std::size_t>& subgroup() const noexcept { return subgroup_; }
  bool in_subgroup(std::size_t k) const { return in_subgroup_.at(k); }
  /// Coset H k containing element k.
  std::size_t coset_of(std::size_t k) const { return coset_of_.at(k); }
  const std::vector<std::size_t>& transversal() const noexcept { return transversal_; }
  std::size_t quotient_order() const noexcept { return transversal_.size(); }
  std::size_t quotient_multiply(std::size_t a, std::size_t b) const {
    return quotient_table_[a * quotient_order() + b];
  }

 private:
  FiniteGroup group_;
  std::vector<bool> in_subgroup_;
  std::vector<std::size_t> subgroup_;
  std::vector<std::size_t> coset_of_;
  std::vector<std::size_t> transversal_;
  std::vector<std::size_t> quotient_table_;
};

/// A mean on bounded functions over a finite group, given as a value table.
using FiniteMean = std::function<Complex(std::span<const Complex>)>;

Complex uniform_mean(std::span<const Complex> values);

/// f_k(y) = f(k y) as a table over K.
std::vector<Complex> left_translate(const FiniteGroup& group, std::span<const Complex> f, std::size_t k);

/// Composed mean M(f) = mean_L(phi-hat) with phi(k) = mean_H(h -> f(k h)).
///
/// phi must be constant on the cosets H k (checked to 1e-12, NumericalError
/// otherwise); phi-hat is read off at the transversal.
Complex compose_means(const FiniteGroupExtension& ext, const FiniteMean& mean_subgroup,
                      const FiniteMean& mean_quotient, std::span<const Complex> f);

}  // namespace gaugelab
