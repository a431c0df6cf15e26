#include "gaugelab/extension.hpp"

#include <cmath>
#include <numbers>

#include "gaugelab/means.hpp"

namespace gaugelab {

FiniteGroup::FiniteGroup(std::vector<GaugeField> elements, int q)
    : elements_(std::move(elements)), q_(q) {
  const std::size_t n = elements_.size();
  if (n > kMaxTableOrder)
    throw InvalidInput("finite group: order " + std::to_string(n) + " exceeds the table cap of " +
                       std::to_string(kMaxTableOrder));
  // Scalar q-th roots multiply by adding exponents, so the table is digit
  // addition mod q on the decoded exponents of each element.
  const std::size_t m = elements_.front().spec().sites();
  const auto uq = static_cast<std::size_t>(q_);
  std::vector<std::size_t> digits(n * m);
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t idx = index_of(elements_[a]);  // also checks the enumeration order
    for (std::size_t x = 0; x < m; ++x, idx /= uq) digits[a * m + x] = idx % uq;
  }
  auto encode = [&](auto digit_of) {
    std::size_t idx = 0;
    for (std::size_t x = m; x-- > 0;) idx = idx * uq + digit_of(x);
    return idx;
  };
  table_.resize(n * n);
  inverse_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b)
      table_[a * n + b] = encode([&](std::size_t x) { return (digits[a * m + x] + digits[b * m + x]) % uq; });
    inverse_[a] = encode([&](std::size_t x) { return (uq - digits[a * m + x]) % uq; });
  }
  identity_ = encode([](std::size_t) { return std::size_t{0}; });
}

FiniteGroup FiniteGroup::cyclic_gauge_fields(const LatticeSpec& spec, int q) {
  return {enumerate_cyclic_fields(spec, q), q};
}

std::size_t FiniteGroup::index_of(const GaugeField& g) const {
  const auto& spec = elements_.front().spec();
  require_same_spec(spec, g.spec(), "finite group lookup");
  std::size_t idx = 0;
  std::size_t place = 1;
  for (std::size_t x = 0; x < spec.sites(); ++x, place *= static_cast<std::size_t>(q_)) {
    const double turns = std::arg(g.at(x)(0, 0)) / (2.0 * std::numbers::pi) * q_;
    const long e = std::lround(turns);
    if (std::abs(turns - static_cast<double>(e)) > 1e-8)
      throw InvalidInput("finite group lookup: field is not Z_q valued");
    idx += static_cast<std::size_t>(((e % q_) + q_) % q_) * place;
  }
  if (idx >= elements_.size() || sup_norm_dist(elements_[idx], g) > kValidationTol)
    throw InvalidInput("finite group lookup: field is not an element");
  return idx;
}

FiniteGroupExtension::FiniteGroupExtension(FiniteGroup group,
                                           const std::function<bool(const GaugeField&)>& in_subgroup)
    : group_(std::move(group)) {
  const std::size_t n = group_.order();
  in_subgroup_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    in_subgroup_[k] = in_subgroup(group_.element(k));
    if (in_subgroup_[k]) subgroup_.push_back(k);
  }
  if (!in_subgroup_[group_.identity()]) throw InvalidInput("extension: subgroup must contain the identity");
  for (std::size_t a : subgroup_)
    for (std::size_t b : subgroup_)
      if (!in_subgroup_[group_.multiply(a, b)]) throw InvalidInput("extension: subgroup is not closed");
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t h : subgroup_)
      if (!in_subgroup_[group_.multiply(group_.multiply(k, h), group_.inverse(k))])
        throw InvalidInput("extension: subgroup is not normal");

  // Cosets H k, in order of their smallest element.
  constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
  coset_of_.assign(n, unassigned);
  for (std::size_t k = 0; k < n; ++k) {
    if (coset_of_[k] != unassigned) continue;
    const std::size_t id = transversal_.size();
    transversal_.push_back(k);
    for (std::size_t h : subgroup_) coset_of_[group_.multiply(h, k)] = id;
  }

  const std::size_t l = transversal_.size();
  quotient_table_.resize(l * l);
  for (std::size_t a = 0; a < l; ++a)
    for (std::size_t b = 0; b < l; ++b)
      quotient_table_[a * l + b] = coset_of_[group_.multiply(transversal_[a], transversal_[b])];
}

FiniteGroupExtension FiniteGroupExtension::constant_subgroup(const LatticeSpec& spec, int q) {
  return {FiniteGroup::cyclic_gauge_fields(spec, q), [](const GaugeField& g) {
            for (const auto& u : g.values())
              if (max_abs(u - g.at(0)) > kValidationTol) return false;
            return true;
          }};
}

Complex uniform_mean(std::span<const Complex> values) {
  if (values.empty()) throw InvalidInput("uniform_mean: empty table");
  Complex total = 0.0;
  for (const auto& v : values) total += v;
  return total / static_cast<double>(values.size());
}

std::vector<Complex> left_translate(const FiniteGroup& group, std::span<const Complex> f, std::size_t k) {
  if (f.size() != group.order()) throw InvalidInput("left_translate: function table size mismatch");
  std::vector<Complex> out(f.size());
  for (std::size_t y = 0; y < f.size(); ++y) out[y] = f[group.multiply(k, y)];
  return out;
}

Complex compose_means(const FiniteGroupExtension& ext, const FiniteMean& mean_subgroup,
                      const FiniteMean& mean_quotient, std::span<const Complex> f) {
  const auto& group = ext.group();
  if (f.size() != group.order())
    throw InvalidInput("compose_means: f must be defined on all " + std::to_string(group.order()) +
                       " elements");
  for (const auto& v : f)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InvalidInput("compose_means: f must be finite");

  const auto& h_elems = ext.subgroup();
  std::vector<Complex> restricted(h_elems.size());
  std::vector<Complex> phi(group.order());
  for (std::size_t k = 0; k < group.order(); ++k) {
    for (std::size_t i = 0; i < h_elems.size(); ++i) restricted[i] = f[group.multiply(k, h_elems[i])];
    phi[k] = mean_subgroup(restricted);
  }

  std::vector<Complex> phi_hat(ext.quotient_order());
  for (std::size_t l = 0; l < phi_hat.size(); ++l) phi_hat[l] = phi[ext.transversal()[l]];
  double spread = 0.0;
  for (std::size_t k = 0; k < group.order(); ++k)
    spread = std::max(spread, std::abs(phi[k] - phi_hat[ext.coset_of(k)]));
  if (spread > kArithmeticTol) throw NumericalError("compose_means: phi is not constant on cosets", spread);

  return mean_quotient(phi_hat);
}

}  // namespace gaugelab
