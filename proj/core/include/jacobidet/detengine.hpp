#pragma once

// Exact determinants by three independent routes:
//
//   bareiss  single-step fraction-free elimination over Z or Z[zeta_m]
//   crt      evaluation at order-m roots of unity modulo primes ell = 1 (mod m),
//            Gaussian elimination in Z/ell, signed CRT reconstruction sized by
//            a Hadamard bound and confirmed on one held-out prime
//   float    complex LU in double precision with a propagated error budget;
//            either a certified integer or "inconclusive"
//
// plus a Cauchy-Binet identity check and exact rational determinants.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "jacobidet/cyclotomic.hpp"
#include "jacobidet/matrix.hpp"

namespace jacobidet {

enum class DetMethod { bareiss, crt, float_check };

std::string_view to_string(DetMethod method);
std::optional<DetMethod> parse_det_method(std::string_view name);

struct DetResult {
  DetMethod method = DetMethod::bareiss;
  /// monostate only for an inconclusive float check.
  std::variant<std::monostate, mpz_class, CycInt> value;
  nlohmann::ordered_json certificate = nlohmann::ordered_json::object();

  bool conclusive() const { return !std::holds_alternative<std::monostate>(value); }
  /// The determinant as a rational integer, when it is one.
  std::optional<mpz_class> integer() const;
  nlohmann::ordered_json to_json() const;
};

mpz_class det_bareiss(IntMatrix a);
CycInt det_bareiss(CycMatrix a);
DetResult det_bareiss_result(const CycMatrix& a);

/// ceil(sqrt(prod over rows of the sum of squared entry bounds)), where an
/// entry bound is the sum of absolute coefficient values. 1 for the empty
/// matrix.
mpz_class hadamard_bound(const CycMatrix& a);
mpz_class hadamard_bound(const IntMatrix& a);

/// Smallest t = u^{(ell-1)/m}, u = 2, 3, ..., of multiplicative order exactly m.
std::uint64_t root_of_unity_mod(std::uint64_t m, std::uint64_t ell);

/// Primes ell = 1 (mod m), ascending, strictly above `floor`.
std::uint64_t next_prime_1_mod(std::uint64_t m, std::uint64_t floor);

/// det(a) evaluated through zeta -> t in Z/ell.
std::uint64_t det_mod_prime(const CycMatrix& a, std::uint64_t ell, std::uint64_t t);

struct CrtOptions {
  std::uint64_t min_prime = 1u << 16;
  std::uint64_t max_prime = (1ull << 32) - 1;
};

/// Requires det(a) to be a rational integer. Throws ArithmeticError when the
/// held-out prime disagrees and std::runtime_error if primes run out.
DetResult det_crt_integer(const CycMatrix& a, const CrtOptions& options = {});

struct FloatCheckDetails {
  std::complex<double> approx;
  double distance = 0.0;
  double error_budget = 0.0;
};

/// Conclusive only when both the rounding distance and the error budget are
/// below 0.25.
DetResult det_float_check(const CycMatrix& a);

mpq_class det_rational(const RatMatrix& a);

template <class T>
struct CauchyBinetResult {
  T direct;
  T expansion;
  bool equal = false;
};

/// det(MN) against sum over r-subsets s of det(M_s) det(N^s).
CauchyBinetResult<mpz_class> cauchy_binet(const IntMatrix& m, const IntMatrix& n);
CauchyBinetResult<CycInt> cauchy_binet(const CycMatrix& m, const CycMatrix& n);

}  // namespace jacobidet
