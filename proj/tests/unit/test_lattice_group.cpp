#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "gaugelab/group.hpp"
#include "gaugelab/haar.hpp"
#include "support.hpp"

using namespace gaugelab;
using testing_support::gaussian_matrix;

TEST_CASE("lattice spec validation") {
  CHECK_THROWS_AS(LatticeSpec({}, 1), InvalidInput);
  CHECK_THROWS_AS(LatticeSpec({2, 2, 2, 2}, 1), InvalidInput);
  CHECK_THROWS_AS(LatticeSpec({0}, 1), InvalidInput);
  CHECK_THROWS_AS(LatticeSpec({2}, 0), InvalidInput);
  CHECK_THROWS_AS(LatticeSpec({2}, 1, {0.5, 0.6}), InvalidInput);
  CHECK_THROWS_AS(LatticeSpec({2}, 1, {1.0, 0.0}), InvalidInput);
  CHECK_THROWS_AS(LatticeSpec({2}, 1, {1.0}), InvalidInput);
  LatticeSpec s({2, 3}, 2, {0.1, 0.2, 0.1, 0.2, 0.3, 0.1});
  CHECK(s.sites() == 6);
  CHECK(s.modes() == 12);
  CHECK_FALSE(s.uniform_weights());
  CHECK(LatticeSpec({4}, 1).uniform_weights());
}

TEST_CASE("lattice coordinates round trip and periodic shifts") {
  LatticeSpec s({3, 4, 2}, 1);
  for (std::size_t i = 0; i < s.sites(); ++i) CHECK(s.site_index(s.coordinates(i)) == i);
  CHECK(s.coordinates(1) == std::vector<int>{0, 0, 1});
  CHECK(s.site_index({-1, 4, 3}) == s.site_index({2, 0, 1}));
  for (std::size_t i = 0; i < s.sites(); ++i) {
    CHECK(s.shifted(s.shifted(i, {1, -2, 1}), {-1, 2, -1}) == i);
    CHECK(s.shifted(i, {3, 4, 2}) == i);
  }
}

TEST_CASE("spectral norm agrees with a Jacobi SVD") {
  Rng rng = substream(11, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix a = gaussian_matrix(1 + trial % 7, 1 + (trial * 3) % 5, rng);
    Eigen::JacobiSVD<CMatrix> svd(a);
    CHECK(spectral_norm(a) == doctest::Approx(svd.singularValues()(0)).epsilon(1e-12));
  }
  // Degenerate top singular value.
  CHECK(spectral_norm(CMatrix::Identity(16, 16) * 3.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(spectral_norm(CMatrix::Zero(4, 4)) == 0.0);
}

TEST_CASE("trace norm agrees with the eigenvalues of sqrt(A* A)") {
  Rng rng = substream(11, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix a = gaussian_matrix(4, 4, rng);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a.adjoint() * a);
    const double oracle = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    CHECK(trace_norm(a) == doctest::Approx(oracle).epsilon(1e-10));
  }
}

TEST_CASE("group kind names parse back") {
  for (const auto& k : {GroupKind::unitary(), GroupKind::special_unitary(), GroupKind::torus(), GroupKind::cyclic(5)})
    CHECK(GroupKind::parse(k.name()) == k);
  CHECK_THROWS_AS(GroupKind::parse("SO3"), InvalidInput);
  CHECK_THROWS_AS(GroupKind::parse("Z0"), InvalidInput);
}

TEST_CASE("gauge field validation per kind") {
  LatticeSpec s({2}, 2);
  const CMatrix bad = CMatrix::Identity(2, 2) * 1.1;
  CHECK_THROWS_AS(GaugeField(s, GroupKind::unitary(), {bad, CMatrix::Identity(2, 2)}), NumericalError);

  CMatrix phase = CMatrix::Identity(2, 2);
  phase(0, 0) = std::polar(1.0, 0.3);
  CHECK_NOTHROW(GaugeField(s, GroupKind::unitary(), {phase, phase}));
  CHECK_THROWS_AS(GaugeField(s, GroupKind::special_unitary(), {phase, phase}), NumericalError);
  CHECK_NOTHROW(GaugeField(s, GroupKind::torus(), {phase, phase}));

  CMatrix swap = CMatrix::Zero(2, 2);
  swap(0, 1) = swap(1, 0) = 1.0;
  CHECK_THROWS_AS(GaugeField(s, GroupKind::torus(), {swap, swap}), NumericalError);

  const CMatrix i4 = CMatrix::Identity(2, 2) * Complex(0, 1);
  CHECK_NOTHROW(GaugeField(s, GroupKind::cyclic(4), {i4, i4}));
  CHECK_THROWS_AS(GaugeField(s, GroupKind::cyclic(3), {i4, i4}), NumericalError);
  CHECK_THROWS_AS(GaugeField(s, GroupKind::cyclic(4), {phase, phase}), NumericalError);

  CHECK_THROWS_AS(GaugeField(s, GroupKind::unitary(), {phase}), InvalidInput);
}

TEST_CASE("pointwise group operations") {
  LatticeSpec s({3}, 2);
  Rng rng = substream(12, 0);
  const auto g = sample_gauge_field(s, GroupKind::unitary(), rng);
  const auto h = sample_gauge_field(s, GroupKind::unitary(), rng);
  const auto k = sample_gauge_field(s, GroupKind::unitary(), rng);
  const auto e = GaugeField::identity(s, GroupKind::unitary());

  CHECK(sup_norm_dist(gauge_mul(gauge_mul(g, h), k), gauge_mul(g, gauge_mul(h, k))) < 1e-13);
  CHECK(sup_norm_dist(gauge_mul(g, gauge_inv(g)), e) < 1e-13);
  CHECK(sup_norm_dist(gauge_mul(e, g), g) == 0.0);
  for (std::size_t x = 0; x < s.sites(); ++x)
    CHECK(max_abs(gauge_mul(g, h).at(x) - g.at(x) * h.at(x)) < 1e-15);

  const auto z = sample_gauge_field(s, GroupKind::cyclic(4), rng);
  CHECK_THROWS_AS(gauge_mul(g, z), InvalidInput);
  CHECK_THROWS_AS(gauge_mul(g, sample_gauge_field(LatticeSpec({4}, 2), GroupKind::unitary(), rng)), InvalidInput);
}

TEST_CASE("sup norm distance is a metric bounded by 2") {
  LatticeSpec s({4}, 2);
  Rng rng = substream(13, 0);
  for (int t = 0; t < 20; ++t) {
    const auto g = sample_gauge_field(s, GroupKind::unitary(), rng);
    const auto h = sample_gauge_field(s, GroupKind::unitary(), rng);
    const auto k = sample_gauge_field(s, GroupKind::unitary(), rng);
    CHECK(sup_norm_dist(g, g) == 0.0);
    CHECK(sup_norm_dist(g, h) == doctest::Approx(sup_norm_dist(h, g)).epsilon(1e-12));
    CHECK(sup_norm_dist(g, k) <= sup_norm_dist(g, h) + sup_norm_dist(h, k) + 1e-12);
    CHECK(sup_norm_dist(g, h) <= 2.0 + 1e-12);
  }
}

TEST_CASE("translation acts as a group action") {
  LatticeSpec s({3, 2}, 1);
  Rng rng = substream(14, 0);
  const auto g = sample_gauge_field(s, GroupKind::unitary(), rng);
  const auto t = translate(g, {1, 1});
  for (std::size_t x = 0; x < s.sites(); ++x) CHECK(max_abs(t.at(x) - g.at(s.shifted(x, {1, 1}))) == 0.0);
  CHECK(sup_norm_dist(translate(translate(g, {1, 0}), {2, 1}), translate(g, {3, 1})) == 0.0);
  CHECK(sup_norm_dist(translate(g, {3, 2}), g) == 0.0);
  CHECK_THROWS_AS(translate(g, {1}), InvalidInput);
  LatticeSpec w({2}, 1, {0.25, 0.75});
  CHECK_THROWS_AS(translate(GaugeField::identity(w, GroupKind::unitary()), {1}), InvalidInput);
}

TEST_CASE("center kernel check for SU(n)") {
  LatticeSpec s({2}, 3);
  const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const GaugeField central(s, GroupKind::special_unitary(), {CMatrix::Identity(3, 3) * w, CMatrix::Identity(3, 3)});
  CHECK(center_kernel_check(central));
  Rng rng = substream(15, 0);
  CHECK_FALSE(center_kernel_check(sample_gauge_field(s, GroupKind::special_unitary(), rng)));
  CHECK_THROWS_AS(center_kernel_check(GaugeField::identity(s, GroupKind::unitary())), InvalidInput);
}
