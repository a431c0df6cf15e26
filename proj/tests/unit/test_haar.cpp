#include <doctest.h>

#include <cmath>

#include "gaugelab/haar.hpp"

using namespace gaugelab;

TEST_CASE("substreams depend only on seed and index") {
  Rng a = substream(5, 17), b = substream(5, 17), c = substream(5, 18), d = substream(6, 17);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
}

TEST_CASE("Haar samples lie in the requested group") {
  Rng rng = substream(21, 0);
  for (int n = 1; n <= 4; ++n) {
    for (int t = 0; t < 10; ++t) {
      const CMatrix u = haar_sample(GroupKind::unitary(), n, rng);
      CHECK(is_unitary(u, 1e-12));
      const CMatrix su = haar_sample(GroupKind::special_unitary(), n, rng);
      CHECK(is_unitary(su, 1e-12));
      CHECK(std::abs(su.determinant() - 1.0) < 1e-12);
      const CMatrix tor = haar_sample(GroupKind::torus(), n, rng);
      CHECK(is_unitary(tor, 1e-12));
      CHECK(max_abs(tor - CMatrix(tor.diagonal().asDiagonal())) == 0.0);
      const CMatrix z = haar_sample(GroupKind::cyclic(6), n, rng);
      CHECK(std::abs(std::pow(z(0, 0), 6) - 1.0) < 1e-12);
    }
  }
  CHECK(max_abs(haar_sample(GroupKind::special_unitary(), 1, rng) - CMatrix::Identity(1, 1)) == 0.0);
  CHECK_THROWS_AS(haar_sample(GroupKind::unitary(), 0, rng), InvalidInput);
}

// Moments of Haar measure: E[g_ij] = 0, E[|g_ij|^2] = 1/n, E[|tr g|^2] = 1 on
// U(n), and E[|tr g|^4] = 2 for n >= 2 (number of permutations of 2 letters).
TEST_CASE("Haar moments on U(n) and SU(n)") {
  const int samples = 40000;
  for (int n : {2, 3}) {
    for (auto kind : {GroupKind::unitary(), GroupKind::special_unitary()}) {
      Rng rng = substream(22, static_cast<std::uint64_t>(n) * 10 + static_cast<std::uint64_t>(kind.family));
      Complex entry = 0.0;
      double entry_sq = 0.0, tr2 = 0.0, tr4 = 0.0;
      for (int s = 0; s < samples; ++s) {
        const CMatrix g = haar_sample(kind, n, rng);
        entry += g(0, 1);
        entry_sq += std::norm(g(1, 0));
        const double t = std::norm(g.trace());
        tr2 += t;
        tr4 += t * t;
      }
      const double tol = 5.0 / std::sqrt(static_cast<double>(samples));
      CHECK(std::abs(entry) / samples < tol);
      CHECK(std::abs(entry_sq / samples - 1.0 / n) < tol);
      CHECK(std::abs(tr2 / samples - 1.0) < tol);
      if (kind.family == GroupFamily::Unitary || n > 2) CHECK(std::abs(tr4 / samples - 2.0) < 6 * tol);
    }
  }
}

TEST_CASE("torus and cyclic samples are uniform") {
  Rng rng = substream(23, 0);
  const int samples = 40000;
  Complex first = 0.0;
  std::vector<int> counts(4, 0);
  for (int s = 0; s < samples; ++s) {
    first += haar_sample(GroupKind::torus(), 2, rng)(1, 1);
    const Complex z = haar_sample(GroupKind::cyclic(4), 1, rng)(0, 0);
    const int k = static_cast<int>(std::lround(std::arg(z) / (std::numbers::pi / 2) + 4)) % 4;
    ++counts[static_cast<std::size_t>(k)];
  }
  CHECK(std::abs(first) / samples < 5.0 / std::sqrt(samples));
  for (int c : counts) CHECK(std::abs(c / static_cast<double>(samples) - 0.25) < 0.02);
}

TEST_CASE("sampled gauge fields use the lattice shape") {
  LatticeSpec s({2, 2}, 3);
  Rng rng = substream(24, 0);
  const auto g = sample_gauge_field(s, GroupKind::special_unitary(), rng);
  CHECK(g.values().size() == 4);
  CHECK(g.at(3).rows() == 3);
  CHECK(g.kind() == GroupKind::special_unitary());
}
