#include "gaugelab/lattice.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace gaugelab {

namespace {

std::size_t site_count(const std::vector<int>& dims) {
  if (dims.empty()) throw InvalidInput("lattice needs at least one dimension");
  if (dims.size() > 3) throw InvalidInput("lattice dimension must be at most 3");
  std::size_t m = 1;
  for (int d : dims) {
    if (d < 1) throw InvalidInput("lattice extents must be positive");
    m *= static_cast<std::size_t>(d);
  }
  return m;
}

}  // namespace

LatticeSpec::LatticeSpec(std::vector<int> dims, int colors)
    : dims_(std::move(dims)), colors_(colors) {
  const std::size_t m = site_count(dims_);
  weights_.assign(m, 1.0 / static_cast<double>(m));
  validate();
}

LatticeSpec::LatticeSpec(std::vector<int> dims, int colors, std::vector<double> weights)
    : dims_(std::move(dims)), colors_(colors), weights_(std::move(weights)) {
  validate();
}

void LatticeSpec::validate() const {
  const std::size_t m = site_count(dims_);
  if (colors_ < 1) throw InvalidInput("colors must be >= 1");
  if (weights_.size() != m)
    throw InvalidInput("expected " + std::to_string(m) + " weights, got " +
                       std::to_string(weights_.size()));
  double total = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw InvalidInput("weights must be strictly positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidInput("weights must sum to 1");
}

bool LatticeSpec::uniform_weights() const noexcept {
  const double w0 = 1.0 / static_cast<double>(sites());
  for (double w : weights_)
    if (std::abs(w - w0) > 1e-15) return false;
  return true;
}

std::vector<int> LatticeSpec::coordinates(std::size_t site) const {
  std::vector<int> c(dims_.size());
  for (std::size_t k = dims_.size(); k-- > 0;) {
    c[k] = static_cast<int>(site % static_cast<std::size_t>(dims_[k]));
    site /= static_cast<std::size_t>(dims_[k]);
  }
  return c;
}

std::size_t LatticeSpec::site_index(const std::vector<int>& coords) const {
  if (coords.size() != dims_.size()) throw InvalidInput("coordinate arity mismatch");
  std::size_t idx = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    const int d = dims_[k];
    const int c = ((coords[k] % d) + d) % d;
    idx = idx * static_cast<std::size_t>(d) + static_cast<std::size_t>(c);
  }
  return idx;
}

std::size_t LatticeSpec::shifted(std::size_t site, const std::vector<int>& shift) const {
  if (shift.size() != dims_.size()) throw InvalidInput("shift arity mismatch");
  auto c = coordinates(site);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] += shift[k];
  return site_index(c);
}

void require_same_spec(const LatticeSpec& a, const LatticeSpec& b, const char* where) {
  if (!(a == b)) throw InvalidInput(std::string(where) + ": lattice spec mismatch");
}

}  // namespace gaugelab
