#include "gaugelab/fock.hpp"

#include <bit>
#include <cmath>

#include <Eigen/SparseCore>

namespace gaugelab {

// ---------------------------------------------------------------------------
// One-particle space

OneParticleVector::OneParticleVector(LatticeSpec spec, CVector values)
    : spec_(std::move(spec)), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.size()) != spec_.modes())
    throw InvalidInput("one-particle vector: expected sites * colors amplitudes");
}

OneParticleVector OneParticleVector::zero(const LatticeSpec& spec) {
  return {spec, CVector::Zero(static_cast<Eigen::Index>(spec.modes()))};
}

OneParticleVector OneParticleVector::basis_mode(const LatticeSpec& spec, std::size_t mode) {
  if (mode >= spec.modes()) throw InvalidInput("basis_mode: mode index out of range");
  CVector c = CVector::Zero(static_cast<Eigen::Index>(spec.modes()));
  c(static_cast<Eigen::Index>(mode)) = 1.0;
  return from_coordinates(spec, c);
}

OneParticleVector OneParticleVector::from_coordinates(const LatticeSpec& spec, const CVector& coords) {
  if (static_cast<std::size_t>(coords.size()) != spec.modes())
    throw InvalidInput("from_coordinates: expected sites * colors coordinates");
  CVector v = coords;
  const int n = spec.colors();
  for (std::size_t x = 0; x < spec.sites(); ++x)
    v.segment(static_cast<Eigen::Index>(x) * n, n) /= std::sqrt(spec.weight(x));
  return {spec, std::move(v)};
}

CVector OneParticleVector::coordinates() const {
  CVector c = values_;
  const int n = spec_.colors();
  for (std::size_t x = 0; x < spec_.sites(); ++x)
    c.segment(static_cast<Eigen::Index>(x) * n, n) *= std::sqrt(spec_.weight(x));
  return c;
}

double OneParticleVector::norm() const { return coordinates().norm(); }

OneParticleVector OneParticleVector::operator+(const OneParticleVector& other) const {
  require_same_spec(spec_, other.spec_, "one-particle sum");
  return {spec_, values_ + other.values_};
}

OneParticleVector OneParticleVector::operator-(const OneParticleVector& other) const {
  require_same_spec(spec_, other.spec_, "one-particle difference");
  return {spec_, values_ - other.values_};
}

OneParticleVector OneParticleVector::scaled(Complex s) const { return {spec_, s * values_}; }

Complex inner(const OneParticleVector& psi, const OneParticleVector& xi) {
  require_same_spec(psi.spec(), xi.spec(), "inner product");
  const auto& spec = psi.spec();
  const int n = spec.colors();
  Complex total = 0.0;
  for (std::size_t x = 0; x < spec.sites(); ++x) {
    const auto off = static_cast<Eigen::Index>(x) * n;
    total += spec.weight(x) * psi.values().segment(off, n).dot(xi.values().segment(off, n));
  }
  return total;
}

OneParticleVector apply(const MatrixField& f, const OneParticleVector& psi) {
  require_same_spec(f.spec, psi.spec(), "apply");
  const int n = f.spec.colors();
  CVector out(psi.values().size());
  for (std::size_t x = 0; x < f.spec.sites(); ++x) {
    const auto off = static_cast<Eigen::Index>(x) * n;
    out.segment(off, n) = f.values[x] * psi.values().segment(off, n);
  }
  return {f.spec, std::move(out)};
}

// ---------------------------------------------------------------------------
// Fock space

FockSpace::FockSpace(LatticeSpec spec) : spec_(std::move(spec)), modes_(spec_.modes()) {
  if (modes_ > kMaxModes)
    throw InvalidInput("Fock space: " + std::to_string(modes_) + " modes exceeds the cap of " +
                       std::to_string(kMaxModes));
}

std::vector<std::vector<std::uint32_t>> FockSpace::sectors() const {
  std::vector<std::vector<std::uint32_t>> out(modes_ + 1);
  for (std::uint32_t s = 0; s < dim(); ++s) out[static_cast<std::size_t>(std::popcount(s))].push_back(s);
  return out;
}

void require_same_space(const FockSpace& a, const FockSpace& b, const char* where) {
  if (!(a == b)) throw InvalidInput(std::string(where) + ": Fock space mismatch");
}

FockOperator::FockOperator(FockSpace space, CMatrix entries)
    : space_(std::move(space)), entries_(std::move(entries)) {
  const auto d = static_cast<Eigen::Index>(space_.dim());
  if (entries_.rows() != d || entries_.cols() != d)
    throw InvalidInput("Fock operator: matrix must be dim x dim");
}

FockOperator FockOperator::identity(const FockSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  return {space, CMatrix::Identity(d, d)};
}

FockOperator FockOperator::zero(const FockSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  return {space, CMatrix::Zero(d, d)};
}

FockOperator FockOperator::operator*(const FockOperator& other) const {
  require_same_space(space_, other.space_, "operator product");
  return {space_, entries_ * other.entries_};
}

FockOperator FockOperator::operator+(const FockOperator& other) const {
  require_same_space(space_, other.space_, "operator sum");
  return {space_, entries_ + other.entries_};
}

FockOperator FockOperator::operator-(const FockOperator& other) const {
  require_same_space(space_, other.space_, "operator difference");
  return {space_, entries_ - other.entries_};
}

// ---------------------------------------------------------------------------
// CAR generators

namespace {

// (-1)^{number of occupied modes below `mode`}
double jw_sign(std::uint32_t state, std::size_t mode) {
  const std::uint32_t below = state & ((std::uint32_t{1} << mode) - 1u);
  return (std::popcount(below) & 1) ? -1.0 : 1.0;
}

}  // namespace

FockOperator mode_annihilator(const FockSpace& space, std::size_t mode) {
  if (mode >= space.modes()) throw InvalidInput("mode_annihilator: mode out of range");
  const auto d = static_cast<Eigen::Index>(space.dim());
  const std::uint32_t bit = std::uint32_t{1} << mode;
  CMatrix a = CMatrix::Zero(d, d);
  for (std::uint32_t s = 0; s < space.dim(); ++s)
    if (s & bit) a(s ^ bit, s) = jw_sign(s, mode);
  return {space, std::move(a)};
}

FockOperator annihilator(const FockSpace& space, const OneParticleVector& psi) {
  require_same_spec(space.spec(), psi.spec(), "annihilator");
  const CVector c = psi.coordinates();
  const auto d = space.dim();
  CMatrix a = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::uint32_t s = 0; s < d; ++s) {
    for (std::size_t k = 0; k < space.modes(); ++k) {
      const std::uint32_t bit = std::uint32_t{1} << k;
      if (!(s & bit)) continue;
      a(s ^ bit, s) += jw_sign(s, k) * std::conj(c(static_cast<Eigen::Index>(k)));
    }
  }
  return {space, std::move(a)};
}

Anticommutators car_anticommutators(const FockSpace& space, const OneParticleVector& psi,
                                    const OneParticleVector& xi) {
  require_same_spec(psi.spec(), xi.spec(), "car_anticommutators");
  using Sparse = Eigen::SparseMatrix<Complex>;
  const Sparse ap = annihilator(space, psi).matrix().sparseView();
  const Sparse ax = annihilator(space, xi).matrix().sparseView();
  const Sparse axd = ax.adjoint();
  const Sparse aa = ap * ax + ax * ap;
  const Sparse a_adag = ap * axd + axd * ap;
  return {FockOperator(space, CMatrix(aa)), FockOperator(space, CMatrix(a_adag))};
}

CMatrix rho_matrix(const MatrixField& f) {
  const auto& spec = f.spec;
  const int n = spec.colors();
  const auto m = static_cast<Eigen::Index>(spec.modes());
  CMatrix r = CMatrix::Zero(m, m);
  for (std::size_t x = 0; x < spec.sites(); ++x) {
    const auto off = static_cast<Eigen::Index>(x) * n;
    r.block(off, off, n, n) = f.values[x];
  }
  return r;
}

// ---------------------------------------------------------------------------
// Second quantization

FockOperator second_quantize(const FockSpace& space, const CMatrix& u) {
  const auto modes = static_cast<Eigen::Index>(space.modes());
  if (u.rows() != modes || u.cols() != modes)
    throw InvalidInput("second_quantize: one-particle matrix must be modes x modes");
  require_unitary(u, kValidationTol, "second_quantize");

  // Minors of size p are expanded along their first (lowest) row into minors
  // of size p - 1, which are the already computed entries of sector p - 1.
  const auto d = static_cast<Eigen::Index>(space.dim());
  CMatrix gamma = CMatrix::Zero(d, d);
  gamma(0, 0) = 1.0;
  const auto sectors = space.sectors();
  std::vector<std::size_t> cols;
  for (std::size_t p = 1; p < sectors.size(); ++p) {
    for (std::uint32_t s : sectors[p]) {
      const int first_row = std::countr_zero(s);
      const std::uint32_t s_rest = s & (s - 1u);
      for (std::uint32_t t : sectors[p]) {
        Complex acc = 0.0;
        double sign = 1.0;
        for (std::uint32_t rest = t; rest; rest &= rest - 1u) {
          const int col = std::countr_zero(rest);
          const std::uint32_t t_rest = t & ~(std::uint32_t{1} << col);
          acc += sign * u(first_row, col) * gamma(s_rest, t_rest);
          sign = -sign;
        }
        gamma(s, t) = acc;
      }
    }
  }
  return {space, std::move(gamma)};
}

FockOperator gauge_unitary(const FockSpace& space, const GaugeField& g) {
  require_same_spec(space.spec(), g.spec(), "gauge_unitary");
  return second_quantize(space, rho_matrix(g));
}

CMatrix sandwich(const CMatrix& v, const CMatrix& x) {
  const Eigen::SparseMatrix<Complex> vs = v.sparseView();
  const CMatrix vx_adj = vs * x.adjoint();  // V X*
  return vs * vx_adj.adjoint();             // V (V X*)* = V X V*
}

FockOperator conjugate(const FockOperator& implementer, const FockOperator& a) {
  require_same_space(implementer.space(), a.space(), "conjugate");
  return {a.space(), sandwich(implementer.matrix(), a.matrix())};
}

FockOperator gauge_automorphism(const GaugeField& g, const FockOperator& a) {
  return conjugate(gauge_unitary(a.space(), g), a);
}

double op_norm(const FockOperator& a) { return spectral_norm(a.matrix()); }

CMatrix translation_unitary(const std::vector<int>& shift, const LatticeSpec& spec) {
  if (shift.size() != spec.dims().size()) throw InvalidInput("translation_unitary: shift arity mismatch");
  if (!spec.uniform_weights()) throw InvalidInput("translation_unitary: requires uniform weights");
  const int n = spec.colors();
  const auto m = static_cast<Eigen::Index>(spec.modes());
  CMatrix t = CMatrix::Zero(m, m);
  for (std::size_t x = 0; x < spec.sites(); ++x) {
    const std::size_t src = spec.shifted(x, shift);
    for (int c = 0; c < n; ++c)
      t(static_cast<Eigen::Index>(x) * n + c, static_cast<Eigen::Index>(src) * n + c) = 1.0;
  }
  return t;
}

CVector vacuum_vector(const FockSpace& space) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(space.dim()));
  v(0) = 1.0;
  return v;
}

}  // namespace gaugelab
