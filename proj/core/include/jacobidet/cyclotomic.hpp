#pragma once

// Exact arithmetic in Z[zeta_m], stored in the power basis
// 1, zeta, ..., zeta^{phi(m)-1} modulo the m-th cyclotomic polynomial.
//
// Canonical form makes value equality coincide with coefficient equality,
// and since Phi_m is irreducible the ring is an integral domain, which is
// what fraction-free elimination relies on.

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "jacobidet/finite_field.hpp"

namespace jacobidet {

/// Raised when an operation that must be exact is not (non-divisible
/// quotient, non-constant norm). Always indicates a bug or a violated
/// precondition, never a recoverable condition.
class ArithmeticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Phi_m with integer coefficients, lowest degree first, computed by exact
/// division of x^m - 1 by Phi_d for every proper divisor d of m. Cached.
const std::vector<std::int64_t>& cyclotomic_poly(std::uint64_t m);

class CycRing {
 public:
  /// Shared, immutable ring for order m (thread-safe cache).
  static std::shared_ptr<const CycRing> get(std::uint64_t m);

  explicit CycRing(std::uint64_t m);

  std::uint64_t order() const { return m_; }
  std::size_t degree() const { return phi_; }
  const std::vector<std::int64_t>& cyclo() const { return cyclo_; }
  /// Residues r in [1, max(m, 2)) with gcd(r, m) = 1, ascending.
  const std::vector<std::uint64_t>& units() const { return units_; }

 private:
  std::uint64_t m_;
  std::size_t phi_;
  std::vector<std::int64_t> cyclo_;
  std::vector<std::uint64_t> units_;
};

using RingPtr = std::shared_ptr<const CycRing>;

struct ComplexApprox {
  std::complex<double> value;
  double radius = 0.0;
};

class CycInt {
 public:
  /// Zero of the ring.
  explicit CycInt(RingPtr ring);
  CycInt(RingPtr ring, const mpz_class& c);
  /// Reduces an arbitrary-length coefficient vector mod Phi_m.
  CycInt(RingPtr ring, std::vector<mpz_class> coeffs);

  static CycInt zeta_pow(RingPtr ring, std::int64_t t);
  /// sum_t counts[t] zeta^t for a length-m exponent histogram.
  static CycInt from_exponent_counts(RingPtr ring, std::span<const std::int64_t> counts);

  const RingPtr& ring() const { return ring_; }
  std::uint64_t order() const { return ring_->order(); }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  /// The constant term when every other coefficient vanishes.
  std::optional<mpz_class> as_rational_integer() const;
  /// gcd of the coefficients (0 for the zero element).
  mpz_class content() const;
  /// sum of |coefficients|; bounds the absolute value of every embedding.
  mpz_class abs_coeff_sum() const;

  CycInt& operator+=(const CycInt& o);
  CycInt& operator-=(const CycInt& o);
  CycInt& operator*=(const CycInt& o);
  CycInt operator-() const;
  CycInt& mul_integer(const mpz_class& c);

  friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
  friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
  friend CycInt operator*(const CycInt& a, const CycInt& b);
  friend bool operator==(const CycInt& a, const CycInt& b);

  /// a*b - c*d with a single reduction.
  static CycInt mul_sub(const CycInt& a, const CycInt& b, const CycInt& c, const CycInt& d);

  nlohmann::ordered_json to_json() const;
  static CycInt from_json(const nlohmann::ordered_json& j);

 private:
  void check_same_ring(const CycInt& o) const;
  RingPtr ring_;
  std::vector<mpz_class> coeffs_;
};

CycInt pow(const CycInt& a, std::uint64_t e);

/// sigma_r: zeta -> zeta^r. Throws std::domain_error when gcd(r, m) != 1.
CycInt galois_apply(std::int64_t r, const CycInt& a);

/// Product of all Galois conjugates; 0 for a = 0.
mpz_class norm(const CycInt& a);

/// Precomputed divisor for repeated exact division by the same b:
/// a / b = a * prod_{r != 1} sigma_r(b) / N(b).
class CycDivisor {
 public:
  /// Throws std::domain_error for b = 0.
  explicit CycDivisor(const CycInt& b);
  /// Throws ArithmeticError when b does not divide a.
  CycInt divide(const CycInt& a) const;
  const mpz_class& norm() const { return norm_; }

 private:
  CycInt divisor_;
  CycInt cofactor_;
  mpz_class norm_;
};

CycInt exact_div(const CycInt& a, const CycInt& b);

/// Evaluation homomorphism Z[zeta_m] -> Z/ell at zeta = t, where t has
/// multiplicative order exactly m modulo the prime ell.
std::uint64_t reduce_mod_prime(const CycInt& a, std::uint64_t ell, std::uint64_t t);

/// Same homomorphism without the order check, for hot loops whose t was
/// validated once.
std::uint64_t eval_mod_prime_unchecked(const CycInt& a, std::uint64_t ell, std::span<const std::uint64_t> t_powers);

/// Reduction Z[zeta_{q-1}] -> F_q sending zeta to the field generator.
FiniteField::Element reduce_to_field(const CycInt& a, const FiniteField& field);

/// Floating-point embedding zeta -> exp(2 pi i / m), with an error radius
/// sum|c| * eps * 8 * (phi + 1) covering coefficient conversion, the
/// rounding of zeta and Horner evaluation on the unit circle.
ComplexApprox to_complex(const CycInt& a);

/// num / den with den >= 1 and gcd(content(num), den) = 1.
class ScaledCyc {
 public:
  ScaledCyc(CycInt num, mpz_class den);

  const CycInt& num() const { return num_; }
  const mpz_class& den() const { return den_; }
  std::optional<mpq_class> as_rational() const;

  friend bool operator==(const ScaledCyc& a, const ScaledCyc& b) {
    return a.den_ == b.den_ && a.num_ == b.num_;
  }

  nlohmann::ordered_json to_json() const;

 private:
  CycInt num_;
  mpz_class den_;
};

}  // namespace jacobidet
