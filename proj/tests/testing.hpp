#pragma once

#include <random>

#include "doctest.h"
#include "susyx/linop.hpp"

namespace susyx::testing {

inline double mat_diff(const LinOp& a, const LinOp& b) { return (a - b).max_abs(); }

inline double vec_diff(const Vector& a, const Vector& b) {
  REQUIRE(a.size() == b.size());
  return (a - b).cwiseAbs().maxCoeff();
}

inline LinOp random_dense(int n_out, int n_in, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  DenseMat m(SpinConfig::dim(n_out), SpinConfig::dim(n_in));
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) m(r, c) = Complex(dist(gen), dist(gen));
  return LinOp::from_dense(n_out, n_in, std::move(m));
}

inline LinOp random_hermitian(int n, std::uint64_t seed) {
  const LinOp a = random_dense(n, n, seed);
  return Complex(0.5) * (a + a.adjoint());
}

}  // namespace susyx::testing
