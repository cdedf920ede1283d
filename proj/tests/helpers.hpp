#pragma once

#include <random>

#include "solvcontact/matrix.hpp"
#include "solvcontact/rational.hpp"

namespace testutil {

using solvcontact::MatrixQ;
using solvcontact::Rational;
using solvcontact::VecQ;

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240917);
  return g;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

/// Small rational n/d with |n| <= num_bound, 1 <= d <= den_bound.
inline Rational random_rational(long num_bound = 5, long den_bound = 4) {
  return solvcontact::make_rational(uniform(-num_bound, num_bound), uniform(1, den_bound));
}

inline VecQ random_vector(std::size_t n, long num_bound = 5, long den_bound = 4) {
  VecQ v(n);
  for (auto& x : v) x = random_rational(num_bound, den_bound);
  return v;
}

inline MatrixQ random_matrix(std::size_t n, long num_bound = 4, long den_bound = 3) {
  MatrixQ m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_rational(num_bound, den_bound);
  return m;
}

/// Product of random elementary integer matrices: det = +-1.
inline MatrixQ random_unimodular(std::size_t n, int steps = 6) {
  MatrixQ u = MatrixQ::identity(n);
  for (int s = 0; s < steps; ++s) {
    const auto i = static_cast<std::size_t>(uniform(0, static_cast<long>(n) - 1));
    auto j = static_cast<std::size_t>(uniform(0, static_cast<long>(n) - 1));
    if (i == j) {
      for (std::size_t k = 0; k < n; ++k) u(k, i) = -u(k, i);
      continue;
    }
    const Rational c(uniform(-2, 2));
    for (std::size_t k = 0; k < n; ++k) u(k, j) += c * u(k, i);
  }
  return u;
}

inline VecQ unit(std::size_t n, std::size_t i) {
  VecQ v(n, Rational(0));
  v[i] = 1;
  return v;
}

}  // namespace testutil
