#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "duoidal/algebra.hpp"

namespace duoidal::random {

using BimRng = std::mt19937_64;

inline Vector random_vector(PrimeField F, std::size_t n, BimRng& rng) {
  std::uniform_int_distribution<Residue> d(0, F.prime() - 1);
  Vector v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

inline Matrix random_invertible(PrimeField F, std::size_t n, BimRng& rng) {
  std::uniform_int_distribution<Residue> d(0, F.prime() - 1);
  while (true) {
    Matrix m(F, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.set(i, j, d(rng));
    if (invert(m)) return m;
  }
}

namespace detail {
// Sparse random vector: a random combination of a random subset of the basis.
inline Vector random_sparse(PrimeField F, std::size_t n, BimRng& rng) {
  std::uniform_int_distribution<Residue> d(1, F.prime() - 1);
  std::bernoulli_distribution keep(0.4);
  Vector v(n, 0);
  for (auto& x : v)
    if (keep(rng)) x = d(rng);
  return v;
}

// Cyclic quotient of E of dimension in [1, max_dim]; falls back to adding
// generators when the quotient is too large.
inline Bimodule random_cyclic(const FDAlgebra& R, const Bimodule& E, std::size_t max_dim, BimRng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Vector> gens{random_sparse(R.field(), E.dim(), rng)};
    while (true) {
      Bimodule M = quotient_bimodule(R, E, gens);
      if (M.dim() == 0) break;
      if (M.dim() <= max_dim) return M;
      gens.push_back(random_sparse(R.field(), E.dim(), rng));
    }
  }
  return zero_bimodule(R);
}

inline Bimodule random_sum(const FDAlgebra& R, const Bimodule& E, std::size_t max_dim, BimRng& rng) {
  if (max_dim == 0) return zero_bimodule(R);
  Bimodule M = random_cyclic(R, E, max_dim, rng);
  while (M.dim() < max_dim && std::uniform_int_distribution<int>(0, 1)(rng) == 1) {
    M = direct_sum(R, M, random_cyclic(R, E, max_dim - M.dim(), rng));
  }
  if (M.dim() == 0) return M;
  return M.transported(R, random_invertible(R.field(), M.dim(), rng));
}
}  // namespace detail

// Direct sum of cyclic quotients of R⊗R, in a random basis.
inline Bimodule random_bimodule(const FDAlgebra& R, std::size_t max_dim, BimRng& rng) {
  return detail::random_sum(R, enveloping_bimodule(R), max_dim, rng);
}

// An R-module with equal left and right actions, in a random basis.
inline Bimodule random_symmetric_bimodule(const FDAlgebra& R, std::size_t max_dim, BimRng& rng) {
  return detail::random_sum(R, regular_bimodule(R), max_dim, rng);
}

}  // namespace duoidal::random
