#pragma once

#include <random>

#include "gaugelab/haar.hpp"
#include "gaugelab/types.hpp"

namespace testing_support {

using gaugelab::CMatrix;
using gaugelab::CVector;
using gaugelab::Complex;

inline CVector gaussian_vector(Eigen::Index n, gaugelab::Rng& rng) {
  std::normal_distribution<double> normal;
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v;
}

inline CMatrix gaussian_matrix(Eigen::Index r, Eigen::Index c, gaugelab::Rng& rng) {
  CMatrix m(r, c);
  for (Eigen::Index k = 0; k < c; ++k) m.col(k) = gaussian_vector(r, rng);
  return m;
}

}  // namespace testing_support
