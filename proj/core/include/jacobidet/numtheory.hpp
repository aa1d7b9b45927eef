#pragma once

// Small-integer number theory used throughout: primality, factorization,
// modular arithmetic, Jacobi symbols and exact binomials.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace jacobidet {

/// Prime factorization as ascending (prime, exponent) pairs.
using Factorization = std::vector<std::pair<std::uint64_t, unsigned>>;

bool is_prime(std::uint64_t n);

/// Trial-division factorization. factorize(1) is empty.
Factorization factorize(std::uint64_t n);

/// All positive divisors of n, ascending. Requires n >= 1.
std::vector<std::uint64_t> divisors(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Inverse of a modulo m; throws std::domain_error when gcd(a, m) != 1.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

/// Reduces a signed value into [0, m).
std::uint64_t mod_floor(std::int64_t a, std::uint64_t m);

/// Multiplicative order of a modulo m (gcd(a, m) must be 1).
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m);

/// Jacobi symbol (a/m) for odd m >= 1, via quadratic reciprocity.
int jacobi_symbol(std::int64_t a, std::uint64_t m);

/// Jacobi symbol computed as a product of Euler-criterion Legendre symbols
/// over the factorization of m. Slow; used to cross-check jacobi_symbol.
int jacobi_symbol_by_euler(std::int64_t a, std::uint64_t m);

/// Exact binomial C(n, k); zero when k > n.
mpz_class binomial(std::uint64_t n, std::uint64_t k);

mpz_class factorial(std::uint64_t n);

/// (-1)^e for a possibly negative exponent.
inline int sign_power(std::int64_t e) { return (e % 2 == 0) ? 1 : -1; }

/// Factorization of an arbitrary-precision integer. Trial division up to
/// `trial_limit`; a remaining cofactor is reported separately together with
/// a probable-primality flag.
struct BigFactorization {
  std::vector<std::pair<mpz_class, unsigned>> factors;
  mpz_class cofactor = 1;
  bool cofactor_probable_prime = false;
};

BigFactorization factorize_big(const mpz_class& n, std::uint64_t trial_limit = 1000000);

}  // namespace jacobidet
