#include "jacobidet/numtheory.hpp"

#include <numeric>
#include <tuple>
#include <stdexcept>

namespace jacobidet {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Factorization factorize(std::uint64_t n) {
  Factorization out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  if (n == 0) throw std::domain_error("divisors: n must be positive");
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (const auto& [p, e] : factorize(n)) {
    (void)e;
    result = result / p * (p - 1);
  }
  return result;
}

__extension__ typedef unsigned __int128 uint128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<uint128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t quot = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - quot * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - quot * s);
  }
  if (old_r != 1 && m != 1) throw std::domain_error("invmod: argument not invertible");
  return mod_floor(old_s, m);
}

std::uint64_t mod_floor(std::int64_t a, std::uint64_t m) {
  const auto mm = static_cast<std::int64_t>(m);
  std::int64_t r = a % mm;
  if (r < 0) r += mm;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
  if (std::gcd(a, m) != 1) throw std::domain_error("multiplicative_order: gcd(a, m) != 1");
  std::uint64_t order = euler_phi(m);
  for (const auto& [p, e] : factorize(order)) {
    for (unsigned i = 0; i < e && order % p == 0 && powmod(a, order / p, m) == 1; ++i) {
      order /= p;
    }
  }
  return order;
}

int jacobi_symbol(std::int64_t a_signed, std::uint64_t m) {
  if (m == 0 || m % 2 == 0) throw std::domain_error("jacobi_symbol: modulus must be odd and positive");
  std::uint64_t a = mod_floor(a_signed, m);
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::uint64_t r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, m);
    if (a % 4 == 3 && m % 4 == 3) result = -result;
    a %= m;
  }
  return m == 1 ? result : 0;
}

int jacobi_symbol_by_euler(std::int64_t a, std::uint64_t m) {
  if (m == 0 || m % 2 == 0) throw std::domain_error("jacobi_symbol_by_euler: modulus must be odd and positive");
  int result = 1;
  for (const auto& [p, e] : factorize(m)) {
    const std::uint64_t r = powmod(mod_floor(a, p), (p - 1) / 2, p);
    const int legendre = r == 0 ? 0 : (r == 1 ? 1 : -1);
    for (unsigned i = 0; i < e; ++i) result *= legendre;
  }
  return result;
}

mpz_class binomial(std::uint64_t n, std::uint64_t k) {
  mpz_class out;
  if (k > n) return out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

mpz_class factorial(std::uint64_t n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

BigFactorization factorize_big(const mpz_class& n, std::uint64_t trial_limit) {
  BigFactorization out;
  mpz_class rest = abs(n);
  if (rest == 0) {
    out.cofactor = 0;
    return out;
  }
  for (std::uint64_t d = 2; d <= trial_limit && rest > 1; d += (d == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(rest.get_mpz_t(), d) == 0) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), d) != 0) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), d);
      ++e;
    }
    out.factors.emplace_back(mpz_class(static_cast<unsigned long>(d)), e);
    if (rest < mpz_class(static_cast<unsigned long>(d)) * d) break;
  }
  if (rest > 1 && rest < mpz_class(static_cast<unsigned long>(trial_limit)) * trial_limit) {
    // Anything left below trial_limit^2 with no factor <= trial_limit is prime.
    out.factors.emplace_back(rest, 1);
    rest = 1;
  }
  out.cofactor = rest;
  out.cofactor_probable_prime = rest > 1 && mpz_probab_prime_p(rest.get_mpz_t(), 30) > 0;
  return out;
}

}  // namespace jacobidet
