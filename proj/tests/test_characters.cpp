#include <gtest/gtest.h>

#include "jacobidet/characters.hpp"
#include "oracles.hpp"

using namespace jacobidet;

namespace {

CycInt cyc(std::uint64_t m, std::vector<long> c) {
  std::vector<mpz_class> v(c.begin(), c.end());
  return CycInt(CycRing::get(m), v);
}

}  // namespace

TEST(Characters, Values) {
  auto f5 = FiniteField::build(5);
  auto ring = character_ring(f5);
  EXPECT_EQ(ring->order(), 4u);
  for (std::int64_t e = 0; e < 4; ++e) {
    Character c(f5, e);
    EXPECT_EQ(c(1), CycInt(ring, 1));
    EXPECT_TRUE(c(0).is_zero());
    EXPECT_FALSE(c.log_value(0));
  }
  EXPECT_EQ(Character(f5, 1)(2), CycInt::zeta_pow(ring, 1));
  EXPECT_EQ(Character(f5, 2)(4), CycInt(ring, 1));
}

TEST(Characters, JacobiSumExamples) {
  auto f3 = FiniteField::build(3);
  EXPECT_EQ(jacobi_sum(f3, 1, 1).as_rational_integer(), mpz_class(1));
  auto f5 = FiniteField::build(5);
  EXPECT_EQ(jacobi_sum(f5, 1, 1), cyc(4, {-1, -2}));
  EXPECT_EQ(jacobi_sum(f5, 1, 3).as_rational_integer(), mpz_class(1));
  EXPECT_EQ(jacobi_sum(f5, 3, 3), cyc(4, {-1, 2}));
}

TEST(Characters, JacobiSumAgainstComplexEnumeration) {
  for (std::uint32_t p : {5u, 7u, 11u, 13u, 17u, 19u, 23u}) {
    auto f = FiniteField::build(p);
    for (std::int64_t i = 0; i < p - 1; ++i) {
      for (std::int64_t j = 0; j < p - 1; ++j) {
        const auto expected = oracle::jacobi_complex(p, i, j);
        const auto got = to_complex(jacobi_sum(f, i, j));
        EXPECT_NEAR(static_cast<double>(expected.real()), got.value.real(), 1e-9) << p << " " << i << " " << j;
        EXPECT_NEAR(static_cast<double>(expected.imag()), got.value.imag(), 1e-9) << p << " " << i << " " << j;
      }
    }
  }
}

TEST(Characters, JacobiClassicalIdentities) {
  for (std::uint32_t q : {4u, 7u, 8u, 9u, 13u, 16u, 25u, 27u}) {
    auto f = FiniteField::build(q);
    const std::int64_t m = q - 1;
    const auto ring = character_ring(f);
    const auto chi_minus_one = [&](std::int64_t i) { return Character(f, i)(f.neg(FiniteField::kOne)); };
    // J(1, 1) = q - 2 with psi(0) = 0.
    EXPECT_EQ(jacobi_sum(f, 0, 0), CycInt(ring, q - 2));
    for (std::int64_t i = 1; i < m; ++i) {
      EXPECT_EQ(jacobi_sum(f, i, 0), CycInt(ring, -1));
      EXPECT_EQ(jacobi_sum(f, i, m - i), -chi_minus_one(i));
      for (std::int64_t j = 1; j < m; ++j) {
        EXPECT_EQ(jacobi_sum(f, i, j), jacobi_sum(f, j, i));
        // |J|^2 = q in every embedding, so the norm is q^{phi(m)/2}.
        if ((i + j) % m != 0) {
          EXPECT_EQ(norm(jacobi_sum(f, i, j)), oracle::ipow(q, static_cast<unsigned>(ring->degree() / 2)));
        }
      }
    }
  }
}

TEST(Characters, GreeneBinomialExample) {
  auto f5 = FiniteField::build(5);
  auto g = greene_binom(f5, 2, 1);
  EXPECT_EQ(g.den(), 5);
  EXPECT_EQ(g.num(), -cyc(4, {1, -2}));
  EXPECT_EQ(greene_binom_numerator(f5, 2, 1), -cyc(4, {1, -2}));

  auto b0 = greene_binom(f5, 3, 0);
  EXPECT_EQ(b0, ScaledCyc(jacobi_sum(f5, 3, 0), 5));

  for (std::int64_t b = 1; b < 4; ++b) {
    auto same = greene_binom(f5, b, b).as_rational();
    ASSERT_TRUE(same);
    EXPECT_EQ(abs(*same), mpq_class(1, 5));
  }
}
