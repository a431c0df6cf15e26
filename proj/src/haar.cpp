#include "gaugelab/haar.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

namespace gaugelab {

Rng substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x9e3779b9u};
  return Rng(seq);
}

namespace {

Complex unit_phase(double angle) { return std::polar(1.0, angle); }

CMatrix haar_unitary(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) z(i, j) = Complex(normal(rng), normal(rng));

  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    // A zero diagonal entry has probability zero for Gaussian input.
    const Complex phase = mag > 0.0 ? r(j, j) / mag : Complex(1.0);
    q.col(j) *= phase;
  }
  return q;
}

}  // namespace

CMatrix haar_sample(GroupKind kind, int n, Rng& rng) {
  if (n < 1) throw InvalidInput("haar_sample: n must be >= 1");
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  switch (kind.family) {
    case GroupFamily::Unitary:
      return haar_unitary(n, rng);
    case GroupFamily::SpecialUnitary: {
      if (n == 1) return CMatrix::Identity(1, 1);
      CMatrix u = haar_unitary(n, rng);
      const double det_arg = std::arg(u.determinant());
      std::uniform_int_distribution<int> root(0, n - 1);
      const int k = root(rng);
      return u * unit_phase((-det_arg + 2.0 * std::numbers::pi * k) / n);
    }
    case GroupFamily::Torus: {
      CMatrix d = CMatrix::Zero(n, n);
      for (int i = 0; i < n; ++i) d(i, i) = unit_phase(angle(rng));
      return d;
    }
    case GroupFamily::Cyclic: {
      if (kind.q < 1) throw InvalidInput("haar_sample: q must be >= 1");
      std::uniform_int_distribution<int> pick(0, kind.q - 1);
      const int k = pick(rng);
      return unit_phase(2.0 * std::numbers::pi * k / kind.q) * CMatrix::Identity(n, n);
    }
  }
  throw InvalidInput("haar_sample: unknown group family");
}

GaugeField sample_gauge_field(const LatticeSpec& spec, GroupKind kind, Rng& rng) {
  std::vector<CMatrix> values;
  values.reserve(spec.sites());
  for (std::size_t x = 0; x < spec.sites(); ++x) values.push_back(haar_sample(kind, spec.colors(), rng));
  return {spec, kind, std::move(values)};
}

}  // namespace gaugelab
