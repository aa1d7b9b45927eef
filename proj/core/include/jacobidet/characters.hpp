#pragma once

// Multiplicative characters of F_q, Jacobi sums and Greene's character
// binomial coefficients.
//
// chi is pinned by chi(g) = zeta_{q-1} for the field's generator g; the
// character chi^i sends g^t to zeta^{i t}. Every character, including the
// trivial one, vanishes at 0.

#include <cstdint>

#include "jacobidet/cyclotomic.hpp"
#include "jacobidet/finite_field.hpp"

namespace jacobidet {

class Character {
 public:
  Character(const FiniteField& field, std::int64_t exponent);

  std::uint64_t exponent() const { return exponent_; }
  bool is_trivial() const { return exponent_ == 0; }
  const RingPtr& ring() const { return ring_; }

  /// Exponent e with chi^i(x) = zeta^e, or nullopt at x = 0.
  std::optional<std::uint64_t> log_value(FiniteField::Element x) const;
  CycInt operator()(FiniteField::Element x) const;

 private:
  const FiniteField* field_;
  RingPtr ring_;
  std::uint64_t exponent_;
};

/// The ring Z[zeta_{q-1}] where the characters of `field` take values.
RingPtr character_ring(const FiniteField& field);

/// J(chi^i, chi^j) = sum_x chi^i(x) chi^j(1 - x), by direct summation.
CycInt jacobi_sum(const FiniteField& field, std::int64_t i, std::int64_t j);

/// Greene's binomial  (chi^a over chi^b) = chi^b(-1)/q * J(chi^a, chi^{-b}).
ScaledCyc greene_binom(const FiniteField& field, std::int64_t a, std::int64_t b);

/// q * greene_binom(a, b), an element of Z[zeta_{q-1}].
CycInt greene_binom_numerator(const FiniteField& field, std::int64_t a, std::int64_t b);

}  // namespace jacobidet
