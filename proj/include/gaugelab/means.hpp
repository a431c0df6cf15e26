#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gaugelab/haar.hpp"
#include "gaugelab/states.hpp"

namespace gaugelab {

// Largest group (or quadrature grid) that is summed by enumeration.
inline constexpr std::uint64_t kMaxEnumeration = 1'000'000;

enum class Sampler {
  MonteCarloHaar,    // plain average over N independent Haar gauge fields
  ExactFiniteGroup,  // exact sum over all Z_q-valued gauge fields
  TorusQuadrature,   // uniform N-point rule per phase, exact for trigonometric polynomials of degree < N
};

std::string sampler_name(Sampler s);
Sampler parse_sampler(const std::string& text);

/// Computable stand-in for the invariant mean on the finitized gauge group.
struct MeanConfig {
  Sampler sampler = Sampler::MonteCarloHaar;
  std::uint64_t samples = 1000;  // MC sample count, or quadrature points per phase
  std::uint64_t seed = 0;
  GroupKind kind = GroupKind::unitary();
  LatticeSpec spec{{1}, 1};

  /// Throws InvalidInput if the configuration cannot be evaluated.
  void validate() const;
  /// Number of terms in the average (N, q^m, or N^(phases)).
  std::uint64_t terms() const;
};

/// Enumerates the weighted gauge fields that realize a MeanConfig.
/// term(i) depends only on (config, i).
class MeanPlan {
 public:
  explicit MeanPlan(MeanConfig cfg);

  const MeanConfig& config() const noexcept { return cfg_; }
  std::uint64_t size() const noexcept { return size_; }
  GaugeField field(std::uint64_t i) const;
  double weight() const noexcept { return 1.0 / static_cast<double>(size_); }

 private:
  MeanConfig cfg_;
  std::uint64_t size_;
};

/// All q^m gauge fields of kind Z_q, in base-q order (site 0 least significant).
std::vector<GaugeField> enumerate_cyclic_fields(const LatticeSpec& spec, int q);

struct Execution {
  unsigned threads = 1;               // 0 selects the hardware concurrency
  bool strict_deterministic = true;   // reduction independent of the thread count
};

/// Density of phi(A) = m(f^A): the mean of Gamma(rho(g)) rho Gamma(rho(g))*.
State group_average(const State& omega0, const MeanConfig& cfg, const Execution& exec = {});

/// max over fields g and suite elements A of |omega(gamma_g(A)) - omega(A)|.
double invariance_defect(const State& omega, std::span<const GaugeField> fields,
                         std::span<const FockOperator> suite);

/// Same quantity with the suite of all matrix units |S><T|, computed as the
/// largest entry of Gamma* rho Gamma - rho.
double invariance_defect(const State& omega, std::span<const GaugeField> fields);

/// Independent Haar test fields drawn from a stream disjoint from averaging.
std::vector<GaugeField> test_fields(const LatticeSpec& spec, GroupKind kind, std::size_t count,
                                    std::uint64_t seed);

/// Random words of length 1..max_degree in a(psi) and a(psi)* for random psi.
std::vector<FockOperator> monomial_suite(const FockSpace& space, std::size_t count, int max_degree,
                                         std::uint64_t seed);

/// Gauge average followed by the uniform average over all lattice shifts
/// acting through Gamma(translation_unitary(a)). Requires uniform weights.
State semidirect_average(const State& omega0, const MeanConfig& gauge_cfg, const Execution& exec = {});

/// max over all shifts a of the largest entry of T_a* rho T_a - rho.
double translation_defect(const State& omega);

struct ConvergencePoint {
  std::uint64_t samples;
  double defect;
};

struct PowerLawFit {
  double slope;
  double intercept;  // natural log of the prefactor
};

/// Least squares fit of log(defect) = intercept + slope * log(samples).
PowerLawFit fit_power_law(std::span<const ConvergencePoint> points);

/// Least squares estimate of C in defect = C / sqrt(samples).
double fit_root_n_constant(std::span<const ConvergencePoint> points);

}  // namespace gaugelab
