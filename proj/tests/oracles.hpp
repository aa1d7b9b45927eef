#pragma once

// Test-only reference implementations that share no code with the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <vector>

#include <gmpxx.h>

namespace oracle {

/// Smallest primitive root mod a prime p, by brute force.
inline std::uint64_t primitive_root(std::uint64_t p) {
  if (p == 2) return 1;
  for (std::uint64_t g = 2; g < p; ++g) {
    std::uint64_t x = 1, order = 0;
    do {
      x = x * g % p;
      ++order;
    } while (x != 1);
    if (order == p - 1) return g;
  }
  return 0;
}

/// log[x] with g^log[x] = x mod p, for 1 <= x < p.
inline std::vector<std::uint64_t> log_table(std::uint64_t p, std::uint64_t g) {
  std::vector<std::uint64_t> log(p, 0);
  std::uint64_t x = 1;
  for (std::uint64_t t = 0; t + 1 < p; ++t) {
    log[x] = t;
    x = x * g % p;
  }
  return log;
}

/// Jacobi sum over a prime field in long double complex arithmetic.
inline std::complex<long double> jacobi_complex(std::uint64_t p, std::int64_t i, std::int64_t j) {
  const auto g = primitive_root(p);
  const auto log = log_table(p, g);
  const auto m = static_cast<std::int64_t>(p - 1);
  std::complex<long double> acc = 0;
  for (std::uint64_t x = 2; x < p; ++x) {
    const std::int64_t e = ((i * static_cast<std::int64_t>(log[x]) + j * static_cast<std::int64_t>(log[p + 1 - x])) %
                                m + m) % m;
    const long double angle = 2.0L * std::numbers::pi_v<long double> * e / m;
    acc += std::polar(1.0L, angle);
  }
  return acc;
}

/// Leibniz expansion over all permutations; n <= 7.
inline mpz_class det_leibniz(const std::vector<std::vector<mpz_class>>& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  mpz_class total = 0;
  do {
    std::size_t inv = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inv += perm[i] > perm[j];
    }
    mpz_class term = inv % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= a[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Plain Gaussian elimination over Q.
inline mpq_class det_gauss(std::vector<std::vector<mpq_class>> a) {
  const std::size_t n = a.size();
  mpq_class det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const mpq_class f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

inline mpz_class ipow(std::int64_t base, unsigned e) {
  mpz_class out;
  mpz_class b = base;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e);
  return out;
}

}  // namespace oracle
