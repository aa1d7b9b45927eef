#pragma once

// Explicit, fully tabulated finite fields F_{p^n}.
//
// Elements are identified by their index in base-p counting order of the
// polynomial coefficient vector (c_0 + c_1 p + ... + c_{n-1} p^{n-1}), so
// index 0 is zero, index 1 is one, and index c < p is the prime-field
// element c. Multiplication runs through discrete-log/antilog tables built
// from a fixed generator.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

namespace jacobidet {

struct PrimePower {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::uint32_t q = 0;

  /// Validates p prime, n >= 1 and that p^n fits the 32-bit element index.
  static PrimePower make(std::uint32_t p, std::uint32_t n);

  /// Recognizes q as p^n; nullopt when q < 2 or q is not a prime power.
  static std::optional<PrimePower> from_order(std::uint64_t q);

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// All prime powers 2 <= q <= q_max, ascending.
std::vector<PrimePower> prime_powers_up_to(std::uint64_t q_max);

/// Coefficients mod p, lowest degree first. Monic polynomials store the
/// leading 1.
using ModPoly = std::vector<std::uint32_t>;

bool is_irreducible(const ModPoly& f, std::uint32_t p);

/// Lexicographically smallest monic irreducible of degree n over Z/p,
/// comparing (c_0, ..., c_{n-1}). Degree one gives x.
ModPoly find_irreducible(std::uint32_t p, std::uint32_t n);

class FiniteField {
 public:
  using Element = std::uint32_t;
  static constexpr Element kZero = 0;
  static constexpr Element kOne = 1;
  static constexpr std::uint32_t kDefaultMaxOrder = 1u << 16;

  /// Throws std::invalid_argument for non-prime p, q < 2 or q above the cap.
  static FiniteField build(const PrimePower& pp, std::uint32_t max_order = kDefaultMaxOrder);
  static FiniteField build(std::uint64_t q, std::uint32_t max_order = kDefaultMaxOrder);

  /// The same field with generator g^r; requires gcd(r, q-1) = 1.
  FiniteField with_generator(std::uint64_t r) const;

  const PrimePower& prime_power() const { return pp_; }
  std::uint32_t p() const { return pp_.p; }
  std::uint32_t degree() const { return pp_.n; }
  std::uint32_t q() const { return pp_.q; }
  const ModPoly& modulus() const { return modulus_; }

  Element generator() const { return gen_; }
  /// g^t for any t (reduced mod q-1).
  Element exp(std::uint64_t t) const { return exp_[t % (pp_.q - 1)]; }
  /// Discrete log base g; requires x != 0.
  std::uint32_t dlog(Element x) const;

  Element add(Element x, Element y) const;
  Element sub(Element x, Element y) const;
  Element neg(Element x) const { return neg_[x]; }
  Element mul(Element x, Element y) const;
  Element inv(Element x) const;
  Element pow(Element x, std::uint64_t e) const;
  /// 1 - x, tabulated.
  Element one_minus(Element x) const { return one_minus_[x]; }

  /// Image of an integer in the prime subfield.
  Element from_integer(std::int64_t c) const;
  std::vector<std::uint32_t> digits(Element x) const;
  Element from_digits(const std::vector<std::uint32_t>& d) const;

  bool contains(Element x) const { return x < pp_.q; }

  /// Diagnostic dump: p, n, modulus coefficients, generator and log table.
  nlohmann::ordered_json to_json() const;

 private:
  FiniteField() = default;
  Element poly_mul(Element x, Element y) const;
  void tabulate();

  PrimePower pp_;
  ModPoly modulus_;
  Element gen_ = 1;
  std::vector<std::uint32_t> pow_p_;
  std::vector<Element> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Element> neg_;
  std::vector<Element> one_minus_;
};

}  // namespace jacobidet
