#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gaugelab/means.hpp"
#include "support.hpp"

using namespace gaugelab;
using testing_support::gaussian_vector;

namespace {

State random_pure(const FockSpace& space, std::uint64_t seed) {
  Rng rng = substream(seed, 0);
  return State::pure(space, gaussian_vector(static_cast<Eigen::Index>(space.dim()), rng));
}

MeanConfig exact_config(const LatticeSpec& spec, int q) {
  MeanConfig cfg;
  cfg.sampler = Sampler::ExactFiniteGroup;
  cfg.kind = GroupKind::cyclic(q);
  cfg.spec = spec;
  return cfg;
}

}  // namespace

TEST_CASE("state validation") {
  FockSpace space(LatticeSpec({1}, 1));
  CMatrix rho(2, 2);
  rho << 0.5, 0.1, 0.2, 0.5;
  CHECK_THROWS_AS(State(space, rho), NumericalError);
  rho << 0.7, 0.0, 0.0, 0.4;
  CHECK_THROWS_AS(State(space, rho), NumericalError);
  rho << 1.2, 0.0, 0.0, -0.2;
  CHECK_THROWS_AS(State(space, rho), NumericalError);
  CHECK_THROWS_AS(State(space, CMatrix::Identity(3, 3) / 3.0), InvalidInput);
  CHECK_THROWS_AS(State::pure(space, CVector::Zero(2)), InvalidInput);
  CHECK_NOTHROW(State::maximally_mixed(space));
}

TEST_CASE("evaluate is the trace pairing") {
  FockSpace space(LatticeSpec({2}, 1));
  Rng rng = substream(51, 0);
  const State omega = random_pure(space, 3);
  const CMatrix a = testing_support::gaussian_matrix(4, 4, rng);
  CHECK(std::abs(evaluate(omega, FockOperator(space, a)) - (omega.density() * a).trace()) < 1e-14);
  CHECK(std::abs(evaluate(omega, FockOperator::identity(space)) - 1.0) < 1e-14);
}

TEST_CASE("Fock state is fixed by every gauge unitary") {
  LatticeSpec s({2}, 2);
  FockSpace space(s);
  Rng rng = substream(52, 0);
  const State fock = fock_state(space);
  for (int t = 0; t < 5; ++t) {
    const auto g = sample_gauge_field(s, GroupKind::unitary(), rng);
    CHECK(max_abs(conjugated(fock, gauge_unitary(space, g)).density() - fock.density()) < 1e-14);
  }
}

TEST_CASE("orbit function matches the pulled back state") {
  LatticeSpec s({2}, 1);
  FockSpace space(s);
  Rng rng = substream(53, 0);
  const State omega = random_pure(space, 4);
  const auto g = sample_gauge_field(s, GroupKind::unitary(), rng);
  const FockOperator a(space, testing_support::gaussian_matrix(4, 4, rng));
  const CMatrix v = gauge_unitary(space, gauge_inv(g)).matrix();
  const Complex direct = (omega.density() * v * a.matrix() * v.adjoint()).trace();
  CHECK(std::abs(orbit_function_value(omega, g, a) - direct) < 1e-13);
}

TEST_CASE("exact finite-group average equals the brute-force sum over Z_q^m") {
  LatticeSpec s({2}, 1);
  FockSpace space(s);
  const int q = 4;
  const State omega = random_pure(space, 5);
  CMatrix oracle = CMatrix::Zero(4, 4);
  for (int k0 = 0; k0 < q; ++k0) {
    for (int k1 = 0; k1 < q; ++k1) {
      // With one mode per site, Gamma(diag(z0, z1)) is diag(1, z0, z1, z0 z1).
      const Complex z0 = std::polar(1.0, 2 * std::numbers::pi * k0 / q);
      const Complex z1 = std::polar(1.0, 2 * std::numbers::pi * k1 / q);
      CVector d(4);
      d << 1.0, z0, z1, z0 * z1;
      oracle += d.asDiagonal() * omega.density() * d.conjugate().asDiagonal();
    }
  }
  oracle /= q * q;
  const State avg = group_average(omega, exact_config(s, q));
  CHECK(max_abs(avg.density() - oracle) < 1e-15);
  CHECK(invariance_defect(avg, enumerate_cyclic_fields(s, q)) < 1e-15);
  CHECK(max_abs(group_average(avg, exact_config(s, q)).density() - avg.density()) < 1e-15);
}

TEST_CASE("exact enumeration covers the group once") {
  LatticeSpec s({3}, 2);
  const auto fields = enumerate_cyclic_fields(s, 3);
  REQUIRE(fields.size() == 27);
  for (std::size_t i = 0; i < fields.size(); ++i)
    for (std::size_t j = i + 1; j < fields.size(); ++j) CHECK(sup_norm_dist(fields[i], fields[j]) > 0.5);
}

TEST_CASE("Monte Carlo average is the mean over per-index substreams") {
  LatticeSpec s({2}, 1);
  FockSpace space(s);
  const State omega = random_pure(space, 6);
  MeanConfig cfg;
  cfg.samples = 37;
  cfg.seed = 99;
  cfg.spec = s;
  CMatrix oracle = CMatrix::Zero(4, 4);
  for (std::uint64_t i = 0; i < cfg.samples; ++i) {
    Rng rng = substream(cfg.seed, i);
    const CMatrix v = gauge_unitary(space, sample_gauge_field(s, cfg.kind, rng)).matrix();
    oracle += v * omega.density() * v.adjoint();
  }
  oracle /= static_cast<double>(cfg.samples);
  CHECK(max_abs(group_average(omega, cfg).density() - oracle) < 1e-14);
}

TEST_CASE("strict reduction is bit-identical across thread counts") {
  LatticeSpec s({3}, 1);
  FockSpace space(s);
  const State omega = random_pure(space, 7);
  MeanConfig cfg;
  cfg.samples = 300;
  cfg.seed = 5;
  cfg.spec = s;
  const CMatrix one = group_average(omega, cfg, {1, true}).density();
  for (unsigned t : {2u, 3u, 8u}) CHECK((group_average(omega, cfg, {t, true}).density().array() == one.array()).all());
  CHECK(max_abs(group_average(omega, cfg, {4, false}).density() - one) < 1e-13);
}

TEST_CASE("torus quadrature averages out every off-diagonal charge") {
  LatticeSpec s({2}, 2);
  FockSpace space(s);
  MeanConfig cfg;
  cfg.sampler = Sampler::TorusQuadrature;
  cfg.kind = GroupKind::torus();
  cfg.samples = 6;
  cfg.spec = s;
  const State avg = group_average(random_pure(space, 8), cfg);
  CHECK(invariance_defect(avg, test_fields(s, GroupKind::torus(), 8, 1)) < 1e-12);
  // Torus-invariant means diagonal in the occupation basis.
  CHECK(max_abs(avg.density() - CMatrix(avg.density().diagonal().asDiagonal())) < 1e-13);
}

TEST_CASE("mean config validation") {
  MeanConfig cfg;
  cfg.spec = LatticeSpec({2}, 1);
  cfg.samples = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidInput);
  cfg.samples = 10;
  cfg.sampler = Sampler::ExactFiniteGroup;
  CHECK_THROWS_AS(cfg.validate(), InvalidInput);
  cfg.kind = GroupKind::cyclic(1001);
  CHECK_THROWS_AS(cfg.validate(), InvalidInput);
  cfg.kind = GroupKind::cyclic(1000);
  CHECK_NOTHROW(cfg.validate());
  cfg.sampler = Sampler::TorusQuadrature;
  cfg.kind = GroupKind::special_unitary();
  CHECK_THROWS_AS(cfg.validate(), InvalidInput);
  CHECK(parse_sampler(sampler_name(Sampler::TorusQuadrature)) == Sampler::TorusQuadrature);
  CHECK_THROWS_AS(parse_sampler("importance"), InvalidInput);
}

TEST_CASE("semidirect average is translation invariant and keeps gauge invariance") {
  LatticeSpec s({3}, 1);
  FockSpace space(s);
  const State omega = random_pure(space, 9);
  const State out = semidirect_average(omega, exact_config(s, 3));
  CHECK(translation_defect(out) < 1e-14);
  CHECK(invariance_defect(out, enumerate_cyclic_fields(s, 3)) < 1e-14);
  CHECK(translation_defect(omega) > 1e-3);
  CHECK_THROWS_AS(semidirect_average(State::maximally_mixed(FockSpace(LatticeSpec({2}, 1, {0.3, 0.7}))),
                                     exact_config(LatticeSpec({2}, 1, {0.3, 0.7}), 2)),
                  InvalidInput);
}

TEST_CASE("invariance defect against an operator suite") {
  LatticeSpec s({2}, 1);
  FockSpace space(s);
  const auto suite = monomial_suite(space, 12, 3, 1);
  const auto fields = test_fields(s, GroupKind::unitary(), 4, 2);
  CHECK(invariance_defect(fock_state(space), fields, suite) < 1e-14);
  CHECK(invariance_defect(random_pure(space, 10), fields, suite) > 1e-3);
}

TEST_CASE("power-law fit recovers synthetic exponents") {
  std::vector<ConvergencePoint> pts;
  for (std::uint64_t n : {100u, 1000u, 10000u}) pts.push_back({n, 3.0 / std::sqrt(static_cast<double>(n))});
  const auto fit = fit_power_law(pts);
  CHECK(fit.slope == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(std::exp(fit.intercept) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit_root_n_constant(pts) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_power_law(std::span(pts).first(1)), InvalidInput);
  pts[0].defect = 0.0;
  CHECK_THROWS_AS(fit_power_law(pts), InvalidInput);
}
