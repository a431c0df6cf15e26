#include <doctest.h>

#include <numbers>
#include <numeric>

#include "gaugelab/extension.hpp"
#include "support.hpp"

using namespace gaugelab;

namespace {

std::vector<Complex> random_table(std::size_t n, std::uint64_t seed) {
  Rng rng = substream(seed, 0);
  const CVector v = testing_support::gaussian_vector(static_cast<Eigen::Index>(n), rng);
  return {v.data(), v.data() + v.size()};
}

Complex brute_mean(const std::vector<Complex>& f) {
  return std::accumulate(f.begin(), f.end(), Complex(0.0)) / static_cast<double>(f.size());
}

}  // namespace

TEST_CASE("cyclic gauge group table satisfies the group axioms") {
  const auto g = FiniteGroup::cyclic_gauge_fields(LatticeSpec({2}, 1), 3);
  REQUIRE(g.order() == 9);
  const auto e = g.identity();
  for (std::size_t a = 0; a < g.order(); ++a) {
    CHECK(g.multiply(a, e) == a);
    CHECK(g.multiply(e, a) == a);
    CHECK(g.multiply(a, g.inverse(a)) == e);
    CHECK(g.index_of(g.element(a)) == a);
    for (std::size_t b = 0; b < g.order(); ++b) {
      CHECK(g.multiply(a, b) == g.index_of(gauge_mul(g.element(a), g.element(b))));
      for (std::size_t c = 0; c < g.order(); ++c)
        CHECK(g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c)));
    }
  }
}

TEST_CASE("table cap and lookups") {
  CHECK_THROWS_AS(FiniteGroup::cyclic_gauge_fields(LatticeSpec({7}, 1), 4), InvalidInput);
  CHECK_NOTHROW(FiniteGroup::cyclic_gauge_fields(LatticeSpec({6}, 1), 4));
  const auto g = FiniteGroup::cyclic_gauge_fields(LatticeSpec({2}, 1), 4);
  const GaugeField eighth = GaugeField::constant(LatticeSpec({2}, 1), GroupKind::cyclic(8),
                                                 CMatrix::Identity(1, 1) * std::polar(1.0, std::numbers::pi / 4));
  CHECK_THROWS_AS(g.index_of(eighth), InvalidInput);
}

TEST_CASE("constant subgroup cosets partition the group") {
  const auto ext = FiniteGroupExtension::constant_subgroup(LatticeSpec({2}, 1), 4);
  CHECK(ext.subgroup().size() == 4);
  CHECK(ext.quotient_order() == 4);
  std::vector<int> sizes(ext.quotient_order(), 0);
  for (std::size_t k = 0; k < ext.group().order(); ++k) ++sizes[ext.coset_of(k)];
  for (int s : sizes) CHECK(s == 4);
  for (std::size_t l = 0; l < ext.quotient_order(); ++l) CHECK(ext.coset_of(ext.transversal()[l]) == l);
  for (std::size_t a = 0; a < ext.quotient_order(); ++a)
    for (std::size_t b = 0; b < ext.quotient_order(); ++b) {
      const auto prod = ext.group().multiply(ext.transversal()[a], ext.transversal()[b]);
      CHECK(ext.quotient_multiply(a, b) == ext.coset_of(prod));
    }
}

TEST_CASE("composed uniform means equal the brute-force mean and are invariant") {
  for (auto [m, q] : std::vector<std::pair<int, int>>{{2, 4}, {3, 2}, {2, 5}}) {
    const auto ext = FiniteGroupExtension::constant_subgroup(LatticeSpec({m}, 1), q);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto f = random_table(ext.group().order(), seed);
      const Complex mf = compose_means(ext, uniform_mean, uniform_mean, f);
      CHECK(std::abs(mf - brute_mean(f)) < 1e-14);
      for (std::size_t k = 0; k < ext.group().order(); ++k)
        CHECK(std::abs(compose_means(ext, uniform_mean, uniform_mean, left_translate(ext.group(), f, k)) - mf) < 1e-14);
    }
  }
}

TEST_CASE("left translation convention f_k(y) = f(k y)") {
  const auto g = FiniteGroup::cyclic_gauge_fields(LatticeSpec({2}, 1), 3);
  const auto f = random_table(g.order(), 7);
  const auto k = std::size_t{5};
  const auto fk = left_translate(g, f, k);
  for (std::size_t y = 0; y < g.order(); ++y) CHECK(fk[y] == f[g.multiply(k, y)]);
}

TEST_CASE("other normal subgroups give the same invariant mean") {
  const LatticeSpec s({2}, 1);
  auto group = FiniteGroup::cyclic_gauge_fields(s, 4);
  // Fields that are trivial on site 0.
  FiniteGroupExtension ext(group, [](const GaugeField& g) { return std::abs(g.at(0)(0, 0) - 1.0) < 1e-9; });
  CHECK(ext.subgroup().size() == 4);
  const auto f = random_table(group.order(), 8);
  CHECK(std::abs(compose_means(ext, uniform_mean, uniform_mean, f) - brute_mean(f)) < 1e-14);
}

TEST_CASE("extension input validation") {
  const LatticeSpec s({2}, 1);
  const auto group = FiniteGroup::cyclic_gauge_fields(s, 4);
  CHECK_THROWS_AS(FiniteGroupExtension(group, [](const GaugeField&) { return false; }), InvalidInput);
  // {1, g} with g of order 4 is not closed.
  const auto g1 = group.element(1);
  CHECK_THROWS_AS(FiniteGroupExtension(group,
                                       [&](const GaugeField& g) {
                                         return sup_norm_dist(g, g1) < 1e-9 ||
                                                sup_norm_dist(g, GaugeField::identity(s, g.kind())) < 1e-9;
                                       }),
                  InvalidInput);

  const auto ext = FiniteGroupExtension::constant_subgroup(s, 4);
  CHECK_THROWS_AS(compose_means(ext, uniform_mean, uniform_mean, std::vector<Complex>(15, 1.0)), InvalidInput);
  std::vector<Complex> bad(16, 1.0);
  bad[3] = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(compose_means(ext, uniform_mean, uniform_mean, bad), InvalidInput);

  // A non-invariant "mean" on H makes phi vary along cosets.
  const FiniteMean first_value = [](std::span<const Complex> v) { return v[0]; };
  CHECK_THROWS_AS(compose_means(ext, first_value, uniform_mean, random_table(16, 9)), NumericalError);
}
