#include <random>

#include <gtest/gtest.h>

#include "jacobidet/characters.hpp"
#include "jacobidet/detengine.hpp"
#include "jacobidet/numtheory.hpp"
#include "jacobidet/selftest.hpp"
#include "jacobidet/theorems.hpp"
#include "oracles.hpp"

using namespace jacobidet;

namespace {

IntMatrix int_matrix(const std::vector<std::vector<long>>& rows) {
  IntMatrix a(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) a(i, j) = rows[i][j];
  }
  return a;
}

std::vector<std::vector<mpz_class>> to_rows(const IntMatrix& a) {
  std::vector<std::vector<mpz_class>> out(a.rows(), std::vector<mpz_class>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out[i][j] = a(i, j);
  }
  return out;
}

CycMatrix jqk(std::uint32_t q, std::uint64_t k) { return build_Jqk(FiniteField::build(q), k); }

}  // namespace

TEST(Bareiss, Examples) {
  EXPECT_EQ(det_bareiss(int_matrix({{2, 3}, {3, 6}})), 3);
  EXPECT_EQ(det_bareiss(IntMatrix(0, 0)), 1);
  EXPECT_EQ(det_bareiss(jqk(3, 1)).as_rational_integer(), mpz_class(1));
  EXPECT_EQ(det_bareiss(jqk(5, 1)).as_rational_integer(), mpz_class(16));
  EXPECT_EQ(det_bareiss(int_matrix({{0, 1}, {1, 0}})), -1);
  EXPECT_EQ(det_bareiss(int_matrix({{1, 2}, {2, 4}})), 0);
}

TEST(Bareiss, AgainstLeibnizExpansion) {
  std::mt19937_64 rng(3);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 15; ++trial) {
      auto a = random_int_matrix(n, n, rng, 20);
      if (trial % 5 == 0 && n > 1) {
        for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = a(0, j) * 3;
      }
      EXPECT_EQ(det_bareiss(a), oracle::det_leibniz(to_rows(a)));
    }
  }
}

TEST(Bareiss, CyclotomicAgainstCofactor) {
  std::mt19937_64 rng(5);
  for (std::uint64_t m : {3u, 4u, 6u, 10u, 12u}) {
    auto ring = CycRing::get(m);
    for (std::size_t n = 1; n <= 4; ++n) {
      auto a = random_cyc_matrix(n, n, ring, rng);
      EXPECT_EQ(det_bareiss(a), det_cofactor(a));
    }
  }
}

TEST(Crt, Examples) {
  auto r = det_crt_integer(jqk(5, 1));
  EXPECT_EQ(r.integer(), mpz_class(16));
  EXPECT_TRUE(r.certificate.contains("extra_prime"));
  EXPECT_EQ(det_mod_prime(jqk(5, 1), 13, root_of_unity_mod(4, 13)), 3u);
  EXPECT_EQ(det_mod_prime(jqk(5, 1), 17, root_of_unity_mod(4, 17)), 16u);

  auto one = make_cyc_matrix(1, 1, CycRing::get(6));
  one(0, 0) = CycInt(CycRing::get(6), -42);
  EXPECT_EQ(det_crt_integer(one).integer(), mpz_class(-42));
  EXPECT_EQ(det_crt_integer(jqk(7, 2)).integer(), mpz_class(6));
  EXPECT_EQ(det_crt_integer(make_cyc_matrix(0, 0, CycRing::get(4))).integer(), mpz_class(1));
}

TEST(Crt, RootsAndPrimes) {
  for (std::uint64_t m : {4u, 6u, 12u, 30u}) {
    const auto ell = next_prime_1_mod(m, 1000);
    EXPECT_GT(ell, 1000u);
    EXPECT_TRUE(is_prime(ell));
    EXPECT_EQ(ell % m, 1u);
    EXPECT_EQ(multiplicative_order(root_of_unity_mod(m, ell), ell), m);
  }
}

TEST(Crt, AgreesWithBareissOnTheoremGrid) {
  for (std::uint32_t q : {7u, 8u, 9u, 11u, 13u}) {
    const auto field = FiniteField::build(q);
    for (auto k : divisors(q - 1)) {
      const auto a = build_Jqk(field, k);
      EXPECT_EQ(det_crt_integer(a).integer(), det_bareiss(a).as_rational_integer()) << q << " " << k;
    }
  }
}

TEST(FloatCheck, Examples) {
  auto r = det_float_check(jqk(4, 1));
  ASSERT_TRUE(r.conclusive());
  EXPECT_EQ(r.integer(), mpz_class(3));
  EXPECT_LT(r.certificate["distance"].get<double>(), 0.25);

  auto s = det_float_check(jqk(5, 2));
  ASSERT_TRUE(s.conclusive());
  EXPECT_EQ(s.integer(), mpz_class(-1));

  auto z = det_float_check(make_cyc_matrix(3, 3, CycRing::get(4)));
  ASSERT_TRUE(z.conclusive());
  EXPECT_EQ(z.integer(), mpz_class(0));
}

TEST(FloatCheck, NeverWrongWhenConclusive) {
  for (const auto& pp : prime_powers_up_to(32)) {
    if (pp.q < 3) continue;
    const auto field = FiniteField::build(pp);
    for (auto k : divisors(pp.q - 1)) {
      const auto a = build_Jqk(field, k);
      auto f = det_float_check(a);
      if (f.conclusive()) EXPECT_EQ(f.integer(), det_bareiss(a).as_rational_integer()) << pp.q << " " << k;
    }
  }
}

TEST(Hadamard, Examples) {
  auto ring = CycRing::get(4);
  auto ones = make_cyc_matrix(2, 2, ring);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) ones(i, j) = CycInt(ring, 1);
  }
  EXPECT_EQ(hadamard_bound(ones), 2);
  EXPECT_EQ(hadamard_bound(int_matrix({{3, 4}, {0, 5}})), 25);
  auto single = make_cyc_matrix(1, 1, ring);
  single(0, 0) = jacobi_sum(FiniteField::build(5), 1, 1);
  EXPECT_EQ(hadamard_bound(single), 3);
}

TEST(CauchyBinet, Examples) {
  auto r = cauchy_binet(int_matrix({{1, 2}}), int_matrix({{3}, {4}}));
  EXPECT_EQ(r.direct, 11);
  EXPECT_EQ(r.expansion, 11);
  EXPECT_TRUE(r.equal);

  auto a = int_matrix({{1, 2}, {3, 4}});
  auto b = int_matrix({{0, 5}, {6, 7}});
  auto sq = cauchy_binet(a, b);
  EXPECT_EQ(sq.expansion, det_bareiss(a) * det_bareiss(b));

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    auto m = random_int_matrix(2, 3, rng);
    auto n = random_int_matrix(3, 2, rng);
    auto c = cauchy_binet(m, n);
    EXPECT_TRUE(c.equal);
    mpz_class brute = 0;
    for (std::size_t s0 = 0; s0 < 3; ++s0) {
      for (std::size_t s1 = s0 + 1; s1 < 3; ++s1) {
        brute += (m(0, s0) * m(1, s1) - m(0, s1) * m(1, s0)) * (n(s0, 0) * n(s1, 1) - n(s0, 1) * n(s1, 0));
      }
    }
    EXPECT_EQ(c.expansion, brute);
  }
}

TEST(Rational, Examples) {
  RatMatrix b1(1, 1);
  b1(0, 0) = 1;
  EXPECT_EQ(det_rational(b1), 1);
  RatMatrix b2(2, 2);
  b2(0, 0) = 1;
  b2(0, 1) = mpq_class(1, 2);
  b2(1, 0) = mpq_class(1, 2);
  b2(1, 1) = mpq_class(1, 6);
  EXPECT_EQ(det_rational(b2), mpq_class(-1, 12));
  RatMatrix d(2, 2);
  d(0, 0) = mpq_class(2, 3);
  d(1, 1) = mpq_class(-5, 7);
  EXPECT_EQ(det_rational(d), mpq_class(-10, 21));
}

TEST(Rational, AgainstGaussOracle) {
  for (unsigned n = 1; n <= 8; ++n) {
    auto b = beta_matrix(n);
    std::vector<std::vector<mpq_class>> rows(n, std::vector<mpq_class>(n));
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned j = 0; j < n; ++j) rows[i][j] = b(i, j);
    }
    EXPECT_EQ(det_rational(b), oracle::det_gauss(rows));
  }
}

TEST(DetMethod, Names) {
  for (auto m : {DetMethod::bareiss, DetMethod::crt, DetMethod::float_check}) {
    EXPECT_EQ(parse_det_method(to_string(m)), m);
  }
  EXPECT_FALSE(parse_det_method("gauss"));
}
