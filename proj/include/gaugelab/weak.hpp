#pragma once

#include <vector>

#include "gaugelab/group.hpp"

namespace gaugelab {

/// Continuous functional on C(X, M(n)) with a density against the lattice
/// measure: omega(F) = sum_x w_x tr(B_x F(x)).
class WeakFunctional {
 public:
  WeakFunctional(LatticeSpec spec, std::vector<CMatrix> blocks);

  /// B_x = I / n at every site, so omega(identity) = 1.
  static WeakFunctional normalized_trace(const LatticeSpec& spec);

  const LatticeSpec& spec() const noexcept { return spec_; }
  const std::vector<CMatrix>& blocks() const noexcept { return blocks_; }

  /// ||omega|| = sum_x w_x ||B_x||_tr.
  double norm() const noexcept { return norm_; }
  /// max_x ||B_x||_tr.
  double max_block_norm() const noexcept { return max_block_norm_; }

  Complex operator()(const MatrixField& f) const;

 private:
  LatticeSpec spec_;
  std::vector<CMatrix> blocks_;
  double norm_ = 0.0;
  double max_block_norm_ = 0.0;
};

/// p_omega(F) = |omega(F)|.
double weak_seminorm(const WeakFunctional& omega, const MatrixField& f);
double weak_seminorm(const WeakFunctional& omega, const GaugeField& g);

}  // namespace gaugelab
