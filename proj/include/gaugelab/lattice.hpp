#pragma once

#include <cstddef>
#include <vector>

#include "gaugelab/types.hpp"

namespace gaugelab {

/// Periodic integer lattice standing in for the compact base space, together
/// with quadrature weights (the measure) and the number of internal colors.
///
/// Sites are numbered row-major over `dims`, the first coordinate varying
/// slowest. Weights are strictly positive and sum to one.
class LatticeSpec {
 public:
  /// Uniform weights 1/m.
  LatticeSpec(std::vector<int> dims, int colors);
  LatticeSpec(std::vector<int> dims, int colors, std::vector<double> weights);

  const std::vector<int>& dims() const noexcept { return dims_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  int colors() const noexcept { return colors_; }
  std::size_t sites() const noexcept { return weights_.size(); }
  std::size_t modes() const noexcept { return sites() * static_cast<std::size_t>(colors_); }
  double weight(std::size_t site) const { return weights_.at(site); }

  bool uniform_weights() const noexcept;

  std::vector<int> coordinates(std::size_t site) const;
  std::size_t site_index(const std::vector<int>& coords) const;
  /// Site reached from `site` by adding `shift` componentwise modulo dims.
  std::size_t shifted(std::size_t site, const std::vector<int>& shift) const;

  friend bool operator==(const LatticeSpec& a, const LatticeSpec& b) {
    return a.dims_ == b.dims_ && a.colors_ == b.colors_ && a.weights_ == b.weights_;
  }

 private:
  void validate() const;

  std::vector<int> dims_;
  int colors_;
  std::vector<double> weights_;
};

void require_same_spec(const LatticeSpec& a, const LatticeSpec& b, const char* where);

}  // namespace gaugelab
