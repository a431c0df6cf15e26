#include "gaugelab/weak.hpp"

#include <algorithm>

namespace gaugelab {

WeakFunctional::WeakFunctional(LatticeSpec spec, std::vector<CMatrix> blocks)
    : spec_(std::move(spec)), blocks_(std::move(blocks)) {
  // Shape validation is shared with MatrixField.
  MatrixField check(spec_, blocks_);
  for (std::size_t x = 0; x < blocks_.size(); ++x) {
    const double t = trace_norm(blocks_[x]);
    norm_ += spec_.weight(x) * t;
    max_block_norm_ = std::max(max_block_norm_, t);
  }
}

WeakFunctional WeakFunctional::normalized_trace(const LatticeSpec& spec) {
  const int n = spec.colors();
  return {spec, std::vector<CMatrix>(spec.sites(), CMatrix::Identity(n, n) / static_cast<double>(n))};
}

Complex WeakFunctional::operator()(const MatrixField& f) const {
  require_same_spec(spec_, f.spec, "weak functional");
  Complex total = 0.0;
  for (std::size_t x = 0; x < blocks_.size(); ++x)
    total += spec_.weight(x) * (blocks_[x] * f.values[x]).trace();
  return total;
}

double weak_seminorm(const WeakFunctional& omega, const MatrixField& f) { return std::abs(omega(f)); }

double weak_seminorm(const WeakFunctional& omega, const GaugeField& g) {
  return weak_seminorm(omega, g.field());
}

}  // namespace gaugelab
