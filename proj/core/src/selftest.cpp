#include "jacobidet/selftest.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "jacobidet/characters.hpp"
#include "jacobidet/detengine.hpp"
#include "jacobidet/finite_field.hpp"
#include "jacobidet/numtheory.hpp"
#include "jacobidet/parallel.hpp"

namespace jacobidet {

using json = nlohmann::ordered_json;

CycInt random_cyc(const RingPtr& ring, std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  std::vector<mpz_class> c(ring->degree());
  for (auto& x : c) x = dist(rng);
  return CycInt(ring, std::move(c));
}

IntMatrix random_int_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  IntMatrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = dist(rng);
  }
  return a;
}

CycMatrix random_cyc_matrix(std::size_t rows, std::size_t cols, const RingPtr& ring, std::mt19937_64& rng,
                            int bound) {
  CycMatrix a = make_cyc_matrix(rows, cols, ring);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = random_cyc(ring, rng, bound);
  }
  return a;
}

namespace {

template <class T>
T laplace(const Matrix<T>& a, const T& one) {
  const std::size_t n = a.rows();
  if (n == 0) return one;
  T acc = a.zero();
  for (std::size_t j = 0; j < n; ++j) {
    const T term = a(0, j) * laplace(a.without_row(0).without_column(j), one);
    if (j % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc;
}

struct Tally {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::string first_failure;

  void check(bool ok, const std::string& label) {
    ++total;
    if (ok) {
      ++passed;
    } else if (first_failure.empty()) {
      first_failure = label;
    }
  }
};

using Property = std::function<Tally(std::mt19937_64&)>;

std::vector<std::pair<std::string, Property>> properties() {
  std::vector<std::pair<std::string, Property>> out;

  out.emplace_back("field.inverse_and_log", [](std::mt19937_64&) {
    Tally t;
    for (const auto& pp : prime_powers_up_to(64)) {
      const auto f = FiniteField::build(pp);
      for (FiniteField::Element x = 1; x < f.q(); ++x) {
        t.check(f.mul(x, f.inv(x)) == FiniteField::kOne && f.exp(f.dlog(x)) == x,
                "q=" + std::to_string(f.q()) + " x=" + std::to_string(x));
      }
    }
    return t;
  });

  out.emplace_back("field.ring_axioms", [](std::mt19937_64& rng) {
    Tally t;
    for (const auto& pp : prime_powers_up_to(32)) {
      const auto f = FiniteField::build(pp);
      std::uniform_int_distribution<std::uint32_t> pick(0, f.q() - 1);
      for (int n = 0; n < 200; ++n) {
        const auto x = pick(rng), y = pick(rng), z = pick(rng);
        const bool ok = f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z)) &&
                        f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z)) &&
                        f.add(f.add(x, y), z) == f.add(x, f.add(y, z)) && f.one_minus(x) == f.sub(1, x);
        t.check(ok, "q=" + std::to_string(f.q()));
      }
    }
    return t;
  });

  out.emplace_back("cyclotomic.divisor_product", [](std::mt19937_64&) {
    Tally t;
    for (std::uint64_t m = 1; m <= 200; ++m) {
      std::vector<mpz_class> prod{1};
      for (std::uint64_t d : divisors(m)) {
        const auto& phi = cyclotomic_poly(d);
        std::vector<mpz_class> next(prod.size() + phi.size() - 1);
        for (std::size_t i = 0; i < prod.size(); ++i) {
          for (std::size_t j = 0; j < phi.size(); ++j) next[i + j] += prod[i] * phi[j];
        }
        prod = std::move(next);
      }
      std::vector<mpz_class> expected(m + 1);
      expected[0] = -1;
      expected[m] = 1;
      t.check(prod == expected, "m=" + std::to_string(m));
    }
    return t;
  });

  out.emplace_back("cyclotomic.reduce_mod_prime_homomorphism", [](std::mt19937_64& rng) {
    Tally t;
    for (std::uint64_t m = 1; m <= 40; ++m) {
      const auto ring = CycRing::get(m);
      const std::uint64_t ell = next_prime_1_mod(m, 1000);
      const std::uint64_t tt = root_of_unity_mod(m, ell);
      for (int n = 0; n < (m <= 12 ? 40 : 10); ++n) {
        const CycInt a = random_cyc(ring, rng), b = random_cyc(ring, rng);
        const auto ra = reduce_mod_prime(a, ell, tt), rb = reduce_mod_prime(b, ell, tt);
        t.check(reduce_mod_prime(a + b, ell, tt) == (ra + rb) % ell &&
                    reduce_mod_prime(a * b, ell, tt) == mulmod(ra, rb, ell),
                "m=" + std::to_string(m));
      }
    }
    return t;
  });

  out.emplace_back("cyclotomic.reduce_to_field_homomorphism", [](std::mt19937_64& rng) {
    Tally t;
    for (const auto& pp : prime_powers_up_to(32)) {
      if (pp.q < 3) continue;
      const auto f = FiniteField::build(pp);
      const auto ring = character_ring(f);
      for (int n = 0; n < 20; ++n) {
        const CycInt a = random_cyc(ring, rng), b = random_cyc(ring, rng);
        const auto ra = reduce_to_field(a, f), rb = reduce_to_field(b, f);
        t.check(reduce_to_field(a + b, f) == f.add(ra, rb) && reduce_to_field(a * b, f) == f.mul(ra, rb),
                "q=" + std::to_string(pp.q));
      }
    }
    return t;
  });

  out.emplace_back("cyclotomic.galois_composition", [](std::mt19937_64& rng) {
    Tally t;
    for (std::uint64_t m = 2; m <= 40; ++m) {
      const auto ring = CycRing::get(m);
      const auto& units = ring->units();
      std::uniform_int_distribution<std::size_t> pick(0, units.size() - 1);
      for (int n = 0; n < 5; ++n) {
        const auto r = static_cast<std::int64_t>(units[pick(rng)]);
        const auto s = static_cast<std::int64_t>(units[pick(rng)]);
        const CycInt a = random_cyc(ring, rng);
        t.check(galois_apply(r, galois_apply(s, a)) == galois_apply(static_cast<std::int64_t>((r * s) % m), a),
                "m=" + std::to_string(m));
      }
    }
    return t;
  });

  out.emplace_back("cyclotomic.norm_multiplicative", [](std::mt19937_64& rng) {
    Tally t;
    for (std::uint64_t m = 1; m <= 24; ++m) {
      const auto ring = CycRing::get(m);
      for (int n = 0; n < 5; ++n) {
        const CycInt a = random_cyc(ring, rng), b = random_cyc(ring, rng);
        t.check(norm(a * b) == norm(a) * norm(b), "m=" + std::to_string(m));
      }
    }
    return t;
  });

  out.emplace_back("cyclotomic.exact_division", [](std::mt19937_64& rng) {
    Tally t;
    for (std::uint64_t m = 1; m <= 24; ++m) {
      const auto ring = CycRing::get(m);
      for (int n = 0; n < 5; ++n) {
        const CycInt a = random_cyc(ring, rng);
        CycInt b = random_cyc(ring, rng);
        if (b.is_zero()) b = CycInt(ring, mpz_class(3));
        t.check(exact_div(a * b, b) == a, "m=" + std::to_string(m));
      }
    }
    return t;
  });

  out.emplace_back("cyclotomic.complex_embedding", [](std::mt19937_64& rng) {
    Tally t;
    for (std::uint64_t m = 1; m <= 60; ++m) {
      const auto ring = CycRing::get(m);
      for (int n = 0; n < 5; ++n) {
        const CycInt a = random_cyc(ring, rng, 1000);
        const auto approx = to_complex(a);
        // Reference value by direct summation in long double.
        std::complex<long double> ref = 0;
        for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
          const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k) /
                                    static_cast<long double>(m);
          ref += static_cast<long double>(a.coeffs()[k].get_d()) * std::polar(1.0L, angle);
        }
        const long double err = std::abs(std::complex<long double>(approx.value) - ref);
        t.check(err <= approx.radius + 1e-12L * (1 + std::abs(ref)), "m=" + std::to_string(m));
      }
    }
    return t;
  });

  out.emplace_back("characters.multiplicative", [](std::mt19937_64&) {
    Tally t;
    for (const auto& pp : prime_powers_up_to(32)) {
      const auto f = FiniteField::build(pp);
      const Character chi(f, 1);
      for (FiniteField::Element x = 1; x < f.q(); ++x) {
        for (FiniteField::Element y = 1; y < f.q(); ++y) {
          t.check(chi(f.mul(x, y)) == chi(x) * chi(y), "q=" + std::to_string(pp.q));
        }
      }
      t.check(chi(0).is_zero() && Character(f, 0)(0).is_zero(), "zero q=" + std::to_string(pp.q));
    }
    return t;
  });

  out.emplace_back("characters.jacobi_identities", [](std::mt19937_64&) {
    Tally t;
    for (const auto& pp : prime_powers_up_to(32)) {
      if (pp.q < 3) continue;
      const auto f = FiniteField::build(pp);
      const auto ring = character_ring(f);
      const std::int64_t order = pp.q - 1;
      const auto minus_one = f.neg(FiniteField::kOne);
      for (std::int64_t i = 0; i < order; ++i) {
        for (std::int64_t j = i; j < order; ++j) {
          const CycInt jij = jacobi_sum(f, i, j);
          const std::string label = "q=" + std::to_string(pp.q) + " i=" + std::to_string(i) + " j=" + std::to_string(j);
          t.check(jij == jacobi_sum(f, j, i), "symmetry " + label);
          if (i != 0 && j != 0 && (i + j) % order != 0) {
            t.check(jij * galois_apply(-1, jij) == CycInt(ring, mpz_class(pp.q)), "norm " + label);
          }
        }
        if (i != 0) {
          t.check(jacobi_sum(f, i, -i) == -Character(f, i)(minus_one), "inverse pair i=" + std::to_string(i));
        }
      }
    }
    return t;
  });

  out.emplace_back("characters.galois_equivariance", [](std::mt19937_64& rng) {
    Tally t;
    for (const auto& pp : prime_powers_up_to(32)) {
      if (pp.q < 3) continue;
      const auto f = FiniteField::build(pp);
      const auto ring = character_ring(f);
      const auto& units = ring->units();
      std::uniform_int_distribution<std::int64_t> exp(0, pp.q - 2);
      std::uniform_int_distribution<std::size_t> pick(0, units.size() - 1);
      for (int n = 0; n < 10; ++n) {
        const auto r = static_cast<std::int64_t>(units[pick(rng)]);
        const auto i = exp(rng), j = exp(rng);
        t.check(galois_apply(r, jacobi_sum(f, i, j)) == jacobi_sum(f, r * i, r * j), "q=" + std::to_string(pp.q));
      }
    }
    return t;
  });

  out.emplace_back("detengine.cofactor_oracle", [](std::mt19937_64& rng) {
    Tally t;
    for (std::size_t n = 0; n <= 5; ++n) {
      for (int trial = 0; trial < 20; ++trial) {
        const IntMatrix a = random_int_matrix(n, n, rng);
        const mpz_class d = det_bareiss(a);
        IntMatrix swapped = a;
        if (n >= 2) swapped.swap_rows(0, n - 1);
        t.check(d == det_cofactor(a) && d == det_bareiss(a.transpose()) &&
                    (n < 2 || det_bareiss(swapped) == -d),
                "n=" + std::to_string(n));
      }
    }
    for (std::uint64_t m : {3u, 4u, 5u, 8u, 12u}) {
      const auto ring = CycRing::get(m);
      for (std::size_t n = 1; n <= 4; ++n) {
        const CycMatrix a = random_cyc_matrix(n, n, ring, rng);
        t.check(det_bareiss(a) == det_cofactor(a), "cyc m=" + std::to_string(m) + " n=" + std::to_string(n));
      }
    }
    return t;
  });

  out.emplace_back("detengine.cauchy_binet", [](std::mt19937_64& rng) {
    Tally t;
    const auto ring = CycRing::get(5);
    for (std::size_t n = 1; n <= 6; ++n) {
      for (std::size_t r = 1; r <= n; ++r) {
        t.check(cauchy_binet(random_int_matrix(r, n, rng), random_int_matrix(n, r, rng)).equal,
                "int r=" + std::to_string(r) + " n=" + std::to_string(n));
        if (n <= 4) {
          t.check(cauchy_binet(random_cyc_matrix(r, n, ring, rng), random_cyc_matrix(n, r, ring, rng)).equal,
                  "cyc r=" + std::to_string(r) + " n=" + std::to_string(n));
        }
      }
    }
    return t;
  });

  out.emplace_back("detengine.engine_agreement", [](std::mt19937_64& rng) {
    Tally t;
    for (std::uint64_t m : {1u, 2u, 4u, 6u, 10u}) {
      const auto ring = CycRing::get(m);
      for (std::size_t n = 0; n <= 8; ++n) {
        const IntMatrix a = random_int_matrix(n, n, rng, 50);
        const mpz_class d = det_bareiss(a);
        const CycMatrix c = to_cyc(a, ring);
        const DetResult crt = det_crt_integer(c);
        const DetResult fl = det_float_check(c);
        const mpz_class bound(crt.certificate["modulus"].get<std::string>());
        const bool ok = crt.integer() == d && bound > 2 * abs(d) && (!fl.conclusive() || fl.integer() == d);
        t.check(ok, "m=" + std::to_string(m) + " n=" + std::to_string(n));
      }
    }
    return t;
  });

  return out;
}

}  // namespace

mpz_class det_cofactor(const IntMatrix& a) { return laplace(a, mpz_class(1)); }

CycInt det_cofactor(const CycMatrix& a) { return laplace(a, CycInt(a.zero().ring(), mpz_class(1))); }

std::vector<VerificationReport> run_selftest(std::uint64_t seed, unsigned jobs) {
  const auto props = properties();
  auto tallies = parallel_map<Tally>(props.size(), jobs, [&](std::size_t i) {
    std::mt19937_64 rng(seed * 1000003u + i);
    return props[i].second(rng);
  });
  std::vector<VerificationReport> out;
  for (std::size_t i = 0; i < props.size(); ++i) {
    json params;
    params["seed"] = seed;
    auto r = VerificationReport::compare("selftest." + props[i].first, params, tallies[i].total, tallies[i].passed,
                                         "module-property");
    if (!tallies[i].first_failure.empty()) r.note = "first failure: " + tallies[i].first_failure;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace jacobidet
