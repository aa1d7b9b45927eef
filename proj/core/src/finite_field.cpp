#include "jacobidet/finite_field.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "jacobidet/numtheory.hpp"

namespace jacobidet {

namespace {

// Remainder of a by monic-or-not g over Z/p (g has invertible leading term).
ModPoly poly_rem(ModPoly a, const ModPoly& g, std::uint32_t p) {
  const std::size_t dg = g.size() - 1;
  const std::uint64_t lead_inv = invmod(g.back(), p);
  for (std::size_t i = a.size(); i-- > dg;) {
    const std::uint64_t c = mulmod(a[i], lead_inv, p);
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dg; ++j) {
      const std::uint64_t sub = mulmod(c, g[j], p);
      a[i - dg + j] = static_cast<std::uint32_t>((a[i - dg + j] + p - sub) % p);
    }
  }
  a.resize(std::min(a.size(), dg));
  return a;
}

bool is_zero_poly(const ModPoly& a) {
  for (auto c : a) {
    if (c != 0) return false;
  }
  return true;
}

}  // namespace

PrimePower PrimePower::make(std::uint32_t p, std::uint32_t n) {
  if (!is_prime(p)) throw std::invalid_argument("PrimePower: p = " + std::to_string(p) + " is not prime");
  if (n == 0) throw std::invalid_argument("PrimePower: exponent must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    q *= p;
    if (q > (1ull << 31)) throw std::invalid_argument("PrimePower: p^n too large");
  }
  return PrimePower{p, n, static_cast<std::uint32_t>(q)};
}

std::optional<PrimePower> PrimePower::from_order(std::uint64_t q) {
  if (q < 2 || q > (1ull << 31)) return std::nullopt;
  const Factorization f = factorize(q);
  if (f.size() != 1) return std::nullopt;
  return make(static_cast<std::uint32_t>(f[0].first), f[0].second);
}

std::vector<PrimePower> prime_powers_up_to(std::uint64_t q_max) {
  std::vector<PrimePower> out;
  for (std::uint64_t q = 2; q <= q_max; ++q) {
    if (auto pp = PrimePower::from_order(q)) out.push_back(*pp);
  }
  return out;
}

bool is_irreducible(const ModPoly& f, std::uint32_t p) {
  if (f.size() < 2 || f.back() == 0) return false;
  const std::size_t n = f.size() - 1;
  if (n == 1) return true;
  // Trial division by every monic polynomial of degree 1..n/2.
  for (std::size_t d = 1; d <= n / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      ModPoly g(d + 1, 0);
      g[d] = 1;
      std::uint64_t rest = idx;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      if (is_zero_poly(poly_rem(f, g, p))) return false;
    }
  }
  return true;
}

ModPoly find_irreducible(std::uint32_t p, std::uint32_t n) {
  if (!is_prime(p)) throw std::invalid_argument("find_irreducible: p is not prime");
  if (n == 0) throw std::invalid_argument("find_irreducible: degree must be positive");
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < n; ++i) count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    // c_0 is the most significant digit of idx so idx order is lex order.
    ModPoly f(n + 1, 0);
    f[n] = 1;
    std::uint64_t rest = idx;
    for (std::uint32_t i = n; i-- > 0;) {
      f[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    if (is_irreducible(f, p)) return f;
  }
  throw std::logic_error("find_irreducible: no irreducible polynomial found");
}

FiniteField FiniteField::build(std::uint64_t q, std::uint32_t max_order) {
  auto pp = PrimePower::from_order(q);
  if (!pp) throw std::invalid_argument("FiniteField: " + std::to_string(q) + " is not a prime power");
  return build(*pp, max_order);
}

FiniteField FiniteField::build(const PrimePower& pp, std::uint32_t max_order) {
  if (!is_prime(pp.p) || pp.n == 0) throw std::invalid_argument("FiniteField: invalid prime power");
  if (pp.q < 2) throw std::invalid_argument("FiniteField: q must be at least 2");
  if (pp.q > max_order) {
    throw std::invalid_argument("FiniteField: q = " + std::to_string(pp.q) + " exceeds the table cap " +
                                std::to_string(max_order));
  }
  FiniteField f;
  f.pp_ = pp;
  f.modulus_ = find_irreducible(pp.p, pp.n);
  f.pow_p_.resize(pp.n);
  std::uint32_t w = 1;
  for (std::uint32_t i = 0; i < pp.n; ++i, w *= pp.p) f.pow_p_[i] = w;

  const std::uint64_t group = pp.q - 1;
  const Factorization group_factors = factorize(group);
  auto slow_pow = [&f](Element x, std::uint64_t e) {
    Element result = kOne;
    while (e > 0) {
      if (e & 1) result = f.poly_mul(result, x);
      x = f.poly_mul(x, x);
      e >>= 1;
    }
    return result;
  };
  f.gen_ = 0;
  for (Element cand = 1; cand < pp.q; ++cand) {
    bool primitive = true;
    for (const auto& [r, e] : group_factors) {
      (void)e;
      if (slow_pow(cand, group / r) == kOne) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      f.gen_ = cand;
      break;
    }
  }
  if (f.gen_ == 0) throw std::logic_error("FiniteField: no generator found");
  f.tabulate();
  return f;
}

void FiniteField::tabulate() {
  const std::uint32_t q = pp_.q;
  exp_.assign(q - 1, 0);
  log_.assign(q, 0);
  Element x = kOne;
  for (std::uint32_t t = 0; t < q - 1; ++t) {
    exp_[t] = x;
    log_[x] = t;
    x = poly_mul(x, gen_);
  }
  if (x != kOne) throw std::logic_error("FiniteField: generator order mismatch");
  neg_.assign(q, 0);
  one_minus_.assign(q, 0);
  for (Element y = 0; y < q; ++y) {
    std::uint32_t out = 0;
    for (std::uint32_t i = 0; i < pp_.n; ++i) {
      const std::uint32_t d = (y / pow_p_[i]) % pp_.p;
      out += ((pp_.p - d) % pp_.p) * pow_p_[i];
    }
    neg_[y] = out;
  }
  for (Element y = 0; y < q; ++y) one_minus_[y] = add(kOne, neg_[y]);
}

FiniteField FiniteField::with_generator(std::uint64_t r) const {
  const std::uint64_t group = pp_.q - 1;
  if (std::gcd(r % group, group) != 1 && group != 1) {
    throw std::invalid_argument("with_generator: exponent not coprime to q-1");
  }
  FiniteField out = *this;
  out.gen_ = exp(r);
  const std::uint64_t r_red = group == 1 ? 0 : r % group;
  for (std::uint64_t t = 0; t < group; ++t) out.exp_[t] = exp_[mulmod(t, r_red, group)];
  for (std::uint64_t t = 0; t < group; ++t) out.log_[out.exp_[t]] = static_cast<std::uint32_t>(t);
  return out;
}

std::uint32_t FiniteField::dlog(Element x) const {
  if (x == kZero || x >= pp_.q) throw std::domain_error("dlog: argument must be a nonzero element");
  return log_[x];
}

FiniteField::Element FiniteField::add(Element x, Element y) const {
  if (pp_.n == 1) return (x + y) % pp_.p;
  std::uint32_t out = 0;
  for (std::uint32_t i = 0; i < pp_.n; ++i) {
    const std::uint32_t dx = (x / pow_p_[i]) % pp_.p;
    const std::uint32_t dy = (y / pow_p_[i]) % pp_.p;
    out += ((dx + dy) % pp_.p) * pow_p_[i];
  }
  return out;
}

FiniteField::Element FiniteField::sub(Element x, Element y) const { return add(x, neg_[y]); }

FiniteField::Element FiniteField::mul(Element x, Element y) const {
  if (x == kZero || y == kZero) return kZero;
  return exp_[(static_cast<std::uint64_t>(log_[x]) + log_[y]) % (pp_.q - 1)];
}

FiniteField::Element FiniteField::inv(Element x) const {
  if (x == kZero) throw std::domain_error("inv: zero has no inverse");
  const std::uint32_t group = pp_.q - 1;
  return exp_[(group - log_[x]) % group];
}

FiniteField::Element FiniteField::pow(Element x, std::uint64_t e) const {
  if (e == 0) return kOne;
  if (x == kZero) return kZero;
  return exp_[mulmod(log_[x], e, pp_.q - 1)];
}

FiniteField::Element FiniteField::from_integer(std::int64_t c) const {
  return static_cast<Element>(mod_floor(c, pp_.p));
}

std::vector<std::uint32_t> FiniteField::digits(Element x) const {
  std::vector<std::uint32_t> d(pp_.n);
  for (std::uint32_t i = 0; i < pp_.n; ++i) d[i] = (x / pow_p_[i]) % pp_.p;
  return d;
}

FiniteField::Element FiniteField::from_digits(const std::vector<std::uint32_t>& d) const {
  if (d.size() != pp_.n) throw std::invalid_argument("from_digits: wrong digit count");
  Element out = 0;
  for (std::uint32_t i = 0; i < pp_.n; ++i) out += (d[i] % pp_.p) * pow_p_[i];
  return out;
}

FiniteField::Element FiniteField::poly_mul(Element x, Element y) const {
  const std::uint32_t n = pp_.n, p = pp_.p;
  if (n == 1) return static_cast<Element>(static_cast<std::uint64_t>(x) * y % p);
  ModPoly prod(2 * n - 1, 0);
  const auto dx = digits(x), dy = digits(y);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (dx[i] == 0) continue;
    for (std::uint32_t j = 0; j < n; ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(dx[i]) * dy[j]) % p);
    }
  }
  ModPoly rem = poly_rem(std::move(prod), modulus_, p);
  rem.resize(n, 0);
  return from_digits(rem);
}

nlohmann::ordered_json FiniteField::to_json() const {
  nlohmann::ordered_json j;
  j["p"] = pp_.p;
  j["n"] = pp_.n;
  j["q"] = pp_.q;
  j["modulus"] = modulus_;
  j["gen"] = gen_;
  nlohmann::ordered_json logs = nlohmann::ordered_json::array();
  for (Element x = 1; x < pp_.q; ++x) logs.push_back(log_[x]);
  j["dlog"] = std::move(logs);
  return j;
}

}  // namespace jacobidet
