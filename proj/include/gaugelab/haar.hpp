#pragma once

#include <cstdint>
#include <random>

#include "gaugelab/group.hpp"

namespace gaugelab {

using Rng = std::mt19937_64;

/// Independent generator for sample `index` of a run seeded with `seed`.
/// Results depend only on (seed, index), never on evaluation order.
Rng substream(std::uint64_t seed, std::uint64_t index);

/// Haar-distributed element of the fiber group.
///
/// U(n): complex Ginibre matrix, QR, and the phases of diag(R) moved into Q.
/// SU(n): a Haar U(n) sample times exp(-i arg det / n) times a uniform n-th
/// root of unity. Torus: independent uniform phases on the diagonal.
/// Z_q: uniform over the q scalar roots of unity.
CMatrix haar_sample(GroupKind kind, int n, Rng& rng);

/// Independent Haar sample at every site (Haar measure on the product group).
GaugeField sample_gauge_field(const LatticeSpec& spec, GroupKind kind, Rng& rng);

}  // namespace gaugelab
