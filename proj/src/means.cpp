#include "gaugelab/means.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

namespace gaugelab {

std::string sampler_name(Sampler s) {
  switch (s) {
    case Sampler::MonteCarloHaar: return "monte-carlo-haar";
    case Sampler::ExactFiniteGroup: return "exact-finite-group";
    case Sampler::TorusQuadrature: return "torus-quadrature";
  }
  return "?";
}

Sampler parse_sampler(const std::string& text) {
  if (text == "monte-carlo-haar") return Sampler::MonteCarloHaar;
  if (text == "exact-finite-group") return Sampler::ExactFiniteGroup;
  if (text == "torus-quadrature") return Sampler::TorusQuadrature;
  throw InvalidInput("unknown sampler '" + text + "'");
}

namespace {

// base^exponent, or kMaxEnumeration + 1 once it exceeds the cap.
std::uint64_t capped_power(std::uint64_t base, std::size_t exponent) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    r *= base;
    if (r > kMaxEnumeration) return kMaxEnumeration + 1;
  }
  return r;
}

bool torus_like(const MeanConfig& cfg) {
  return cfg.kind.family == GroupFamily::Torus ||
         (cfg.kind.family == GroupFamily::Unitary && cfg.spec.colors() == 1);
}

}  // namespace

void MeanConfig::validate() const {
  if (samples < 1) throw InvalidInput("mean config: sample count must be >= 1");
  switch (sampler) {
    case Sampler::MonteCarloHaar:
      break;
    case Sampler::ExactFiniteGroup:
      if (kind.family != GroupFamily::Cyclic)
        throw InvalidInput("mean config: exact-finite-group requires a cyclic kind Z_q");
      if (capped_power(static_cast<std::uint64_t>(kind.q), spec.sites()) > kMaxEnumeration)
        throw InvalidInput("mean config: q^m exceeds the enumeration cap of 10^6");
      break;
    case Sampler::TorusQuadrature:
      if (!torus_like(*this))
        throw InvalidInput("mean config: torus-quadrature requires the torus kind (or U with n = 1)");
      if (capped_power(samples, spec.modes()) > kMaxEnumeration)
        throw InvalidInput("mean config: quadrature grid exceeds the enumeration cap of 10^6");
      break;
  }
}

std::uint64_t MeanConfig::terms() const {
  switch (sampler) {
    case Sampler::MonteCarloHaar: return samples;
    case Sampler::ExactFiniteGroup: return capped_power(static_cast<std::uint64_t>(kind.q), spec.sites());
    case Sampler::TorusQuadrature: return capped_power(samples, spec.modes());
  }
  return 0;
}

MeanPlan::MeanPlan(MeanConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  size_ = cfg_.terms();
}

GaugeField MeanPlan::field(std::uint64_t i) const {
  const auto& spec = cfg_.spec;
  const int n = spec.colors();
  switch (cfg_.sampler) {
    case Sampler::MonteCarloHaar: {
      Rng rng = substream(cfg_.seed, i);
      return sample_gauge_field(spec, cfg_.kind, rng);
    }
    case Sampler::ExactFiniteGroup: {
      const auto q = static_cast<std::uint64_t>(cfg_.kind.q);
      std::vector<CMatrix> values;
      values.reserve(spec.sites());
      for (std::size_t x = 0; x < spec.sites(); ++x, i /= q) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(i % q) / static_cast<double>(q);
        values.push_back(std::polar(1.0, angle) * CMatrix::Identity(n, n));
      }
      return {spec, cfg_.kind, std::move(values)};
    }
    case Sampler::TorusQuadrature: {
      const std::uint64_t order = cfg_.samples;
      std::vector<CMatrix> values;
      values.reserve(spec.sites());
      for (std::size_t x = 0; x < spec.sites(); ++x) {
        CMatrix d = CMatrix::Zero(n, n);
        for (int c = 0; c < n; ++c, i /= order) {
          const double angle =
              2.0 * std::numbers::pi * static_cast<double>(i % order) / static_cast<double>(order);
          d(c, c) = std::polar(1.0, angle);
        }
        values.push_back(std::move(d));
      }
      return {spec, cfg_.kind, std::move(values)};
    }
  }
  throw InvalidInput("mean plan: unknown sampler");
}

std::vector<GaugeField> enumerate_cyclic_fields(const LatticeSpec& spec, int q) {
  MeanConfig cfg;
  cfg.sampler = Sampler::ExactFiniteGroup;
  cfg.kind = GroupKind::cyclic(q);
  cfg.spec = spec;
  const MeanPlan plan(cfg);
  std::vector<GaugeField> out;
  out.reserve(plan.size());
  for (std::uint64_t i = 0; i < plan.size(); ++i) out.push_back(plan.field(i));
  return out;
}

namespace {

constexpr std::uint64_t kReductionBlock = 64;

CMatrix conjugation_sum(const FockSpace& space, const MeanPlan& plan, const CMatrix& rho,
                        std::uint64_t begin, std::uint64_t end) {
  CMatrix acc = CMatrix::Zero(rho.rows(), rho.cols());
  for (std::uint64_t i = begin; i < end; ++i) {
    const CMatrix v = gauge_unitary(space, plan.field(i)).matrix();
    acc += sandwich(v, rho);
  }
  return acc;
}

unsigned resolve_threads(const Execution& exec) {
  unsigned t = exec.threads == 0 ? std::thread::hardware_concurrency() : exec.threads;
  return std::max(1u, t);
}

// Sum of V rho V* over the plan. In strict mode partial sums are formed over
// fixed index blocks and reduced in block order, so the bits do not depend on
// the thread count.
CMatrix reduce_conjugations(const FockSpace& space, const MeanPlan& plan, const CMatrix& rho,
                            const Execution& exec) {
  const std::uint64_t n = plan.size();
  const unsigned threads = static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(exec), n));

  if (exec.strict_deterministic) {
    const std::uint64_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
    std::vector<CMatrix> partial(blocks);
    auto work = [&](unsigned worker) {
      for (std::uint64_t b = worker; b < blocks; b += threads)
        partial[b] = conjugation_sum(space, plan, rho, b * kReductionBlock,
                                     std::min(n, (b + 1) * kReductionBlock));
    };
    if (threads <= 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    }
    CMatrix total = CMatrix::Zero(rho.rows(), rho.cols());
    for (const auto& p : partial) total += p;
    return total;
  }

  std::vector<CMatrix> partial(threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        partial[w] = conjugation_sum(space, plan, rho, n * w / threads, n * (w + 1) / threads);
      });
  }
  CMatrix total = CMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace

State group_average(const State& omega0, const MeanConfig& cfg, const Execution& exec) {
  require_same_spec(omega0.space().spec(), cfg.spec, "group_average");
  const MeanPlan plan(cfg);
  CMatrix avg = reduce_conjugations(omega0.space(), plan, omega0.density(), exec) * plan.weight();
  avg = 0.5 * (avg + avg.adjoint()).eval();
  return {omega0.space(), std::move(avg)};
}

double invariance_defect(const State& omega, std::span<const GaugeField> fields,
                         std::span<const FockOperator> suite) {
  double worst = 0.0;
  for (const auto& g : fields) {
    const FockOperator v = gauge_unitary(omega.space(), g);
    // omega(gamma_g(A)) - omega(A) = tr((V* rho V - rho) A)
    const CMatrix diff = sandwich(v.matrix().adjoint(), omega.density()) - omega.density();
    for (const auto& a : suite) {
      require_same_space(omega.space(), a.space(), "invariance_defect");
      worst = std::max(worst, std::abs(diff.transpose().cwiseProduct(a.matrix()).sum()));
    }
  }
  return worst;
}

double invariance_defect(const State& omega, std::span<const GaugeField> fields) {
  double worst = 0.0;
  for (const auto& g : fields) {
    const CMatrix v = gauge_unitary(omega.space(), g).matrix();
    worst = std::max(worst, max_abs(sandwich(v.adjoint(), omega.density()) - omega.density()));
  }
  return worst;
}

std::vector<GaugeField> test_fields(const LatticeSpec& spec, GroupKind kind, std::size_t count,
                                    std::uint64_t seed) {
  std::vector<GaugeField> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    // Indices from the top of the range never collide with averaging samples.
    Rng rng = substream(seed, ~std::uint64_t{0} - i);
    out.push_back(sample_gauge_field(spec, kind, rng));
  }
  return out;
}

std::vector<FockOperator> monomial_suite(const FockSpace& space, std::size_t count, int max_degree,
                                         std::uint64_t seed) {
  if (max_degree < 1) throw InvalidInput("monomial_suite: degree must be >= 1");
  Rng rng = substream(seed, 0);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> degree(1, max_degree);
  std::bernoulli_distribution dagger(0.5);
  const auto modes = static_cast<Eigen::Index>(space.modes());

  std::vector<FockOperator> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    FockOperator word = FockOperator::identity(space);
    const int len = degree(rng);
    for (int l = 0; l < len; ++l) {
      CVector c(modes);
      for (Eigen::Index k = 0; k < modes; ++k) c(k) = Complex(normal(rng), normal(rng));
      c /= c.norm();
      const FockOperator a = annihilator(space, OneParticleVector::from_coordinates(space.spec(), c));
      word = word * (dagger(rng) ? a.adjoint() : a);
    }
    out.push_back(std::move(word));
  }
  return out;
}

namespace {

std::vector<FockOperator> translation_implementers(const FockSpace& space) {
  const auto& spec = space.spec();
  std::vector<FockOperator> out;
  out.reserve(spec.sites());
  for (std::size_t x = 0; x < spec.sites(); ++x)
    out.push_back(second_quantize(space, translation_unitary(spec.coordinates(x), spec)));
  return out;
}

}  // namespace

State semidirect_average(const State& omega0, const MeanConfig& gauge_cfg, const Execution& exec) {
  const auto& space = omega0.space();
  if (!space.spec().uniform_weights()) throw InvalidInput("semidirect_average: requires uniform weights");
  const State inner = group_average(omega0, gauge_cfg, exec);
  const auto shifts = translation_implementers(space);
  CMatrix avg = CMatrix::Zero(inner.density().rows(), inner.density().cols());
  for (const auto& t : shifts) avg += t.matrix() * inner.density() * t.matrix().adjoint();
  avg /= static_cast<double>(shifts.size());
  avg = 0.5 * (avg + avg.adjoint()).eval();
  return {space, std::move(avg)};
}

double translation_defect(const State& omega) {
  double worst = 0.0;
  for (const auto& t : translation_implementers(omega.space()))
    worst = std::max(worst, max_abs(t.matrix().adjoint() * omega.density() * t.matrix() - omega.density()));
  return worst;
}

PowerLawFit fit_power_law(std::span<const ConvergencePoint> points) {
  if (points.size() < 2) throw InvalidInput("fit_power_law: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& p : points) {
    if (!(p.defect > 0.0)) throw InvalidInput("fit_power_law: defects must be positive");
    const double x = std::log(static_cast<double>(p.samples));
    const double y = std::log(p.defect);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(points.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {slope, (sy - slope * sx) / n};
}

double fit_root_n_constant(std::span<const ConvergencePoint> points) {
  if (points.empty()) throw InvalidInput("fit_root_n_constant: no points");
  // Minimize sum (d_i - C / sqrt(N_i))^2.
  double num = 0, den = 0;
  for (const auto& p : points) {
    const double basis = 1.0 / std::sqrt(static_cast<double>(p.samples));
    num += p.defect * basis;
    den += basis * basis;
  }
  return num / den;
}

}  // namespace gaugelab
