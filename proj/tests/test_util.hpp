#pragma once

#include "ctqec/linalg.hpp"
#include "ctqec/rng.hpp"

namespace ctqec::test {

inline double max_diff(const Mat& a, const Mat& b) { return max_abs(a - b); }

inline Mat random_complex(int rows, int cols, CounterRng& rng) {
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
  return m;
}

/// Random full-rank density matrix: G G^dag normalized to unit trace.
inline Mat random_density(int dim, CounterRng& rng) {
  Mat g = random_complex(dim, dim, rng);
  Mat rho = g * g.adjoint();
  return rho / rho.trace().real();
}

/// Random normalized state vector.
inline Vec random_state(int dim, CounterRng& rng) {
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(rng.normal(), rng.normal());
  return v / v.norm();
}

}  // namespace ctqec::test
