#include "jacobidet/characters.hpp"

#include <vector>

#include "jacobidet/numtheory.hpp"

namespace jacobidet {

RingPtr character_ring(const FiniteField& field) { return CycRing::get(field.q() - 1); }

Character::Character(const FiniteField& field, std::int64_t exponent)
    : field_(&field), ring_(character_ring(field)), exponent_(mod_floor(exponent, field.q() - 1)) {}

std::optional<std::uint64_t> Character::log_value(FiniteField::Element x) const {
  if (x == FiniteField::kZero) return std::nullopt;
  return mulmod(exponent_, field_->dlog(x), field_->q() - 1);
}

CycInt Character::operator()(FiniteField::Element x) const {
  const auto e = log_value(x);
  if (!e) return CycInt(ring_);
  return CycInt::zeta_pow(ring_, static_cast<std::int64_t>(*e));
}

CycInt jacobi_sum(const FiniteField& field, std::int64_t i, std::int64_t j) {
  const std::uint64_t m = field.q() - 1;
  const std::uint64_t ii = mod_floor(i, m), jj = mod_floor(j, m);
  std::vector<std::int64_t> counts(m, 0);
  // x = 0 and x = 1 contribute nothing: one of the two arguments vanishes.
  for (FiniteField::Element x = 2; x < field.q(); ++x) {
    const std::uint64_t lx = field.dlog(x);
    const std::uint64_t ly = field.dlog(field.one_minus(x));
    ++counts[(mulmod(ii, lx, m) + mulmod(jj, ly, m)) % m];
  }
  return CycInt::from_exponent_counts(character_ring(field), counts);
}

CycInt greene_binom_numerator(const FiniteField& field, std::int64_t a, std::int64_t b) {
  const Character chi_b(field, b);
  const FiniteField::Element minus_one = field.neg(FiniteField::kOne);
  return chi_b(minus_one) * jacobi_sum(field, a, -b);
}

ScaledCyc greene_binom(const FiniteField& field, std::int64_t a, std::int64_t b) {
  return ScaledCyc(greene_binom_numerator(field, a, b), mpz_class(static_cast<unsigned long>(field.q())));
}

}  // namespace jacobidet
