#include <gtest/gtest.h>

#include "jacobidet/finite_field.hpp"
#include "oracles.hpp"

using namespace jacobidet;

TEST(PrimePower, Recognition) {
  auto pp = PrimePower::from_order(27);
  ASSERT_TRUE(pp);
  EXPECT_EQ(pp->p, 3u);
  EXPECT_EQ(pp->n, 3u);
  EXPECT_FALSE(PrimePower::from_order(10));
  EXPECT_FALSE(PrimePower::from_order(1));
  EXPECT_FALSE(PrimePower::from_order(0));
  EXPECT_THROW(PrimePower::make(4, 1), std::invalid_argument);

  std::vector<std::uint32_t> qs;
  for (const auto& p : prime_powers_up_to(27)) qs.push_back(p.q);
  EXPECT_EQ(qs, (std::vector<std::uint32_t>{2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27}));
}

TEST(Irreducible, Examples) {
  EXPECT_EQ(find_irreducible(2, 2), (ModPoly{1, 1, 1}));
  EXPECT_EQ(find_irreducible(3, 1), (ModPoly{0, 1}));
  EXPECT_EQ(find_irreducible(3, 2), (ModPoly{1, 0, 1}));
}

TEST(Irreducible, BruteForceQuadraticsOverZ3) {
  // Monic quadratics are irreducible exactly when rootless. Enumerate in
  // (c0, c1) lexicographic order and take the first rootless one.
  ModPoly first;
  for (std::uint32_t c0 = 0; c0 < 3 && first.empty(); ++c0) {
    for (std::uint32_t c1 = 0; c1 < 3 && first.empty(); ++c1) {
      bool root = false;
      for (std::uint32_t x = 0; x < 3; ++x) root |= (c0 + c1 * x + x * x) % 3 == 0;
      EXPECT_EQ(is_irreducible({c0, c1, 1}, 3), !root);
      if (!root) first = {c0, c1, 1};
    }
  }
  EXPECT_EQ(find_irreducible(3, 2), first);
}

TEST(FiniteField, PrimeFieldGenerators) {
  auto f7 = FiniteField::build(7);
  EXPECT_EQ(f7.generator(), 3u);
  auto f5 = FiniteField::build(5);
  EXPECT_EQ(f5.generator(), 2u);
  EXPECT_EQ(f5.dlog(2), 1u);
  EXPECT_EQ(f5.dlog(4), 2u);
  EXPECT_EQ(f5.dlog(3), 3u);
  EXPECT_EQ(f5.dlog(1), 0u);
  for (std::uint64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61}) {
    EXPECT_EQ(FiniteField::build(p).generator(), oracle::primitive_root(p)) << p;
  }
}

TEST(FiniteField, F4) {
  auto f4 = FiniteField::build(4);
  const FiniteField::Element omega = 2;  // the residue class of x
  EXPECT_EQ(f4.mul(omega, omega), f4.add(omega, FiniteField::kOne));
  for (FiniteField::Element x = 2; x < 4; ++x) EXPECT_EQ(f4.pow(x, 3), FiniteField::kOne);
}

TEST(FiniteField, ArithmeticExamples) {
  auto f5 = FiniteField::build(5);
  EXPECT_EQ(f5.mul(2, 3), 1u);
  auto f7 = FiniteField::build(7);
  EXPECT_EQ(f7.inv(3), 5u);
  EXPECT_EQ(f7.neg(3), 4u);
  EXPECT_EQ(f7.from_integer(-1), 6u);
}

TEST(FiniteField, PrimeFieldMatchesIntegerArithmetic) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 31u}) {
    auto f = FiniteField::build(p);
    for (std::uint32_t x = 0; x < p; ++x) {
      for (std::uint32_t y = 0; y < p; ++y) {
        EXPECT_EQ(f.add(x, y), (x + y) % p);
        EXPECT_EQ(f.mul(x, y), (x * y) % p);
        EXPECT_EQ(f.sub(x, y), (x + p - y) % p);
      }
    }
  }
}

TEST(FiniteField, LogTableExhaustive) {
  for (const auto& pp : prime_powers_up_to(64)) {
    auto f = FiniteField::build(pp);
    for (FiniteField::Element x = 1; x < f.q(); ++x) {
      EXPECT_EQ(f.exp(f.dlog(x)), x);
      EXPECT_EQ(f.mul(x, f.inv(x)), FiniteField::kOne);
    }
    std::uint32_t order = 1;
    for (auto x = f.generator(); x != FiniteField::kOne; x = f.mul(x, f.generator())) ++order;
    EXPECT_EQ(order, f.q() - 1);
  }
}

TEST(FiniteField, WithGenerator) {
  auto f = FiniteField::build(9);
  auto h = f.with_generator(3);
  EXPECT_EQ(h.generator(), f.pow(f.generator(), 3));
  EXPECT_THROW(f.with_generator(2), std::invalid_argument);
}

TEST(FiniteField, Errors) {
  EXPECT_THROW(FiniteField::build(10), std::invalid_argument);
  EXPECT_THROW(FiniteField::build(1), std::invalid_argument);
  EXPECT_THROW(FiniteField::build(1u << 17), std::invalid_argument);
}
