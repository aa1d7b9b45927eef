#include "jacobidet/cyclotomic.hpp"

#include <cfloat>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>

#include "jacobidet/numtheory.hpp"

namespace jacobidet {

namespace {

using IntPoly = std::vector<std::int64_t>;

// Exact quotient of a by a monic b; throws if the remainder is nonzero.
IntPoly divide_monic_exact(IntPoly a, const IntPoly& b) {
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) throw ArithmeticError("cyclotomic_poly: divisor degree exceeds dividend");
  IntPoly quot(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    const std::int64_t c = a[i];
    quot[i - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  for (std::size_t i = 0; i < db; ++i) {
    if (a[i] != 0) throw ArithmeticError("cyclotomic_poly: inexact division");
  }
  return quot;
}

// In-place reduction of an arbitrary-length coefficient vector mod Phi_m.
void reduce_in_place(std::vector<mpz_class>& v, const CycRing& ring) {
  const std::size_t d = ring.degree();
  const auto& cyclo = ring.cyclo();
  for (std::size_t i = v.size(); i-- > d;) {
    mpz_srcptr c = v[i].get_mpz_t();
    if (mpz_sgn(c) == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      const std::int64_t f = cyclo[j];
      if (f > 0) {
        mpz_submul_ui(v[i - d + j].get_mpz_t(), c, static_cast<unsigned long>(f));
      } else if (f < 0) {
        mpz_addmul_ui(v[i - d + j].get_mpz_t(), c, static_cast<unsigned long>(-f));
      }
    }
  }
  v.resize(d);
}

// Unreduced product accumulated into out (length >= 2d - 1).
void accumulate_product(std::vector<mpz_class>& out, const std::vector<mpz_class>& a,
                        const std::vector<mpz_class>& b, bool subtract) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_srcptr ai = a[i].get_mpz_t();
    if (mpz_sgn(ai) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (subtract) {
        mpz_submul(out[i + j].get_mpz_t(), ai, b[j].get_mpz_t());
      } else {
        mpz_addmul(out[i + j].get_mpz_t(), ai, b[j].get_mpz_t());
      }
    }
  }
}

std::uint64_t mpz_mod_u(const mpz_class& c, std::uint64_t ell) {
  return mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(ell));
}

}  // namespace

const std::vector<std::int64_t>& cyclotomic_poly(std::uint64_t m) {
  static std::recursive_mutex mu;
  static std::map<std::uint64_t, IntPoly> cache;
  if (m == 0) throw std::domain_error("cyclotomic_poly: m must be positive");
  std::lock_guard lock(mu);
  if (auto it = cache.find(m); it != cache.end()) return it->second;
  IntPoly poly(m + 1, 0);
  poly[0] = -1;
  poly[m] = 1;
  for (std::uint64_t d : divisors(m)) {
    if (d == m) continue;
    poly = divide_monic_exact(std::move(poly), cyclotomic_poly(d));
  }
  return cache.emplace(m, std::move(poly)).first->second;
}

CycRing::CycRing(std::uint64_t m) : m_(m), cyclo_(cyclotomic_poly(m)) {
  phi_ = cyclo_.size() - 1;
  for (std::uint64_t r = 1; r < std::max<std::uint64_t>(m, 2); ++r) {
    if (std::gcd(r, m) == 1) units_.push_back(r);
  }
}

std::shared_ptr<const CycRing> CycRing::get(std::uint64_t m) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::shared_ptr<const CycRing>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[m];
  if (!slot) slot = std::make_shared<const CycRing>(m);
  return slot;
}

CycInt::CycInt(RingPtr ring) : ring_(std::move(ring)), coeffs_(ring_->degree()) {}

CycInt::CycInt(RingPtr ring, const mpz_class& c) : CycInt(std::move(ring)) { coeffs_[0] = c; }

CycInt::CycInt(RingPtr ring, std::vector<mpz_class> coeffs) : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < ring_->degree()) coeffs_.resize(ring_->degree());
  reduce_in_place(coeffs_, *ring_);
}

CycInt CycInt::zeta_pow(RingPtr ring, std::int64_t t) {
  const std::uint64_t m = ring->order();
  std::vector<mpz_class> v(std::max<std::size_t>(m, ring->degree()));
  v[mod_floor(t, m)] = 1;
  return CycInt(std::move(ring), std::move(v));
}

CycInt CycInt::from_exponent_counts(RingPtr ring, std::span<const std::int64_t> counts) {
  const std::uint64_t m = ring->order();
  if (counts.size() != m) throw std::invalid_argument("from_exponent_counts: histogram length must equal m");
  std::vector<mpz_class> v(std::max<std::size_t>(m, ring->degree()));
  for (std::size_t t = 0; t < counts.size(); ++t) v[t] = static_cast<long>(counts[t]);
  return CycInt(std::move(ring), std::move(v));
}

bool CycInt::is_zero() const {
  for (const auto& c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

std::optional<mpz_class> CycInt::as_rational_integer() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) return std::nullopt;
  }
  return coeffs_[0];
}

mpz_class CycInt::content() const {
  mpz_class g = 0;
  for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

mpz_class CycInt::abs_coeff_sum() const {
  mpz_class s = 0;
  for (const auto& c : coeffs_) s += abs(c);
  return s;
}

void CycInt::check_same_ring(const CycInt& o) const {
  if (ring_ != o.ring_ && ring_->order() != o.ring_->order()) {
    throw std::invalid_argument("CycInt: operands live in different cyclotomic rings (m = " +
                                std::to_string(ring_->order()) + " vs " + std::to_string(o.ring_->order()) + ")");
  }
}

CycInt& CycInt::operator+=(const CycInt& o) {
  check_same_ring(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CycInt& CycInt::operator-=(const CycInt& o) {
  check_same_ring(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

CycInt& CycInt::operator*=(const CycInt& o) {
  *this = *this * o;
  return *this;
}

CycInt CycInt::operator-() const {
  CycInt out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

CycInt& CycInt::mul_integer(const mpz_class& c) {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

CycInt operator*(const CycInt& a, const CycInt& b) {
  a.check_same_ring(b);
  const std::size_t d = a.ring_->degree();
  std::vector<mpz_class> prod(2 * d - 1);
  accumulate_product(prod, a.coeffs_, b.coeffs_, false);
  reduce_in_place(prod, *a.ring_);
  CycInt out(a.ring_);
  out.coeffs_ = std::move(prod);
  return out;
}

CycInt CycInt::mul_sub(const CycInt& a, const CycInt& b, const CycInt& c, const CycInt& d) {
  a.check_same_ring(b);
  a.check_same_ring(c);
  a.check_same_ring(d);
  const std::size_t deg = a.ring_->degree();
  std::vector<mpz_class> prod(2 * deg - 1);
  accumulate_product(prod, a.coeffs_, b.coeffs_, false);
  accumulate_product(prod, c.coeffs_, d.coeffs_, true);
  reduce_in_place(prod, *a.ring_);
  CycInt out(a.ring_);
  out.coeffs_ = std::move(prod);
  return out;
}

bool operator==(const CycInt& a, const CycInt& b) {
  return a.ring_->order() == b.ring_->order() && a.coeffs_ == b.coeffs_;
}

nlohmann::ordered_json CycInt::to_json() const {
  nlohmann::ordered_json j;
  j["m"] = ring_->order();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : coeffs_) arr.push_back(c.get_str());
  j["coeffs"] = std::move(arr);
  return j;
}

CycInt CycInt::from_json(const nlohmann::ordered_json& j) {
  auto ring = CycRing::get(j.at("m").get<std::uint64_t>());
  std::vector<mpz_class> coeffs;
  for (const auto& c : j.at("coeffs")) coeffs.emplace_back(c.get<std::string>());
  if (coeffs.size() != ring->degree()) throw std::invalid_argument("CycInt::from_json: coefficient count mismatch");
  return CycInt(std::move(ring), std::move(coeffs));
}

CycInt pow(const CycInt& a, std::uint64_t e) {
  CycInt result(a.ring(), mpz_class(1));
  CycInt base = a;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

CycInt galois_apply(std::int64_t r, const CycInt& a) {
  const std::uint64_t m = a.order();
  const std::uint64_t rr = mod_floor(r, m);
  if (std::gcd(rr, m) != 1 && m != 1) {
    throw std::domain_error("galois_apply: r = " + std::to_string(r) + " is not a unit mod " + std::to_string(m));
  }
  std::vector<mpz_class> v(std::max<std::size_t>(m, a.ring()->degree()));
  const auto& c = a.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) v[mulmod(i, rr, m)] += c[i];
  return CycInt(a.ring(), std::move(v));
}

namespace {

CycInt conjugate_cofactor(const CycInt& b) {
  CycInt cof(b.ring(), mpz_class(1));
  for (std::uint64_t r : b.ring()->units()) {
    if (r == 1) continue;
    cof *= galois_apply(static_cast<std::int64_t>(r), b);
  }
  return cof;
}

}  // namespace

mpz_class norm(const CycInt& a) {
  if (a.is_zero()) return 0;
  const auto full = a * conjugate_cofactor(a);
  auto n = full.as_rational_integer();
  if (!n) throw ArithmeticError("norm: conjugate product is not a rational integer");
  return *n;
}

CycDivisor::CycDivisor(const CycInt& b) : divisor_(b), cofactor_(b.ring()), norm_(0) {
  if (b.is_zero()) throw std::domain_error("exact_div: division by zero");
  cofactor_ = conjugate_cofactor(b);
  auto n = (b * cofactor_).as_rational_integer();
  if (!n) throw ArithmeticError("exact_div: conjugate product is not a rational integer");
  norm_ = *n;
}

CycInt CycDivisor::divide(const CycInt& a) const {
  if (a.order() != divisor_.order()) throw std::invalid_argument("exact_div: ring mismatch");
  if (norm_ == 1) return a * cofactor_;
  if (norm_ == -1) return -(a * cofactor_);
  CycInt scaled = a * cofactor_;
  std::vector<mpz_class> q = scaled.coeffs();
  for (auto& c : q) {
    if (mpz_divisible_p(c.get_mpz_t(), norm_.get_mpz_t()) == 0) {
      throw ArithmeticError("exact_div: divisor does not divide dividend in Z[zeta_" +
                            std::to_string(a.order()) + "]");
    }
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), norm_.get_mpz_t());
  }
  return CycInt(a.ring(), std::move(q));
}

CycInt exact_div(const CycInt& a, const CycInt& b) { return CycDivisor(b).divide(a); }

std::uint64_t reduce_mod_prime(const CycInt& a, std::uint64_t ell, std::uint64_t t) {
  const std::uint64_t m = a.order();
  if (!is_prime(ell)) throw std::domain_error("reduce_mod_prime: modulus is not prime");
  t %= ell;
  bool exact_order = t != 0 && powmod(t, m, ell) == 1;
  for (const auto& [r, e] : factorize(m)) {
    (void)e;
    if (exact_order && powmod(t, m / r, ell) == 1) exact_order = false;
  }
  if (!exact_order) {
    throw std::domain_error("reduce_mod_prime: t does not have multiplicative order " + std::to_string(m) +
                            " modulo " + std::to_string(ell));
  }
  std::vector<std::uint64_t> powers(a.ring()->degree());
  std::uint64_t x = 1;
  for (auto& pw : powers) {
    pw = x;
    x = mulmod(x, t, ell);
  }
  return eval_mod_prime_unchecked(a, ell, powers);
}

std::uint64_t eval_mod_prime_unchecked(const CycInt& a, std::uint64_t ell, std::span<const std::uint64_t> t_powers) {
  std::uint64_t acc = 0;
  const auto& c = a.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    acc = (acc + mulmod(mpz_mod_u(c[i], ell), t_powers[i], ell)) % ell;
  }
  return acc;
}

FiniteField::Element reduce_to_field(const CycInt& a, const FiniteField& field) {
  if (a.order() != static_cast<std::uint64_t>(field.q()) - 1) {
    throw std::invalid_argument("reduce_to_field: element of Z[zeta_" + std::to_string(a.order()) +
                                "] cannot map to F_" + std::to_string(field.q()));
  }
  FiniteField::Element acc = FiniteField::kZero;
  const auto& c = a.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto ci = static_cast<std::int64_t>(mpz_fdiv_ui(c[i].get_mpz_t(), field.p()));
    if (ci == 0) continue;
    acc = field.add(acc, field.mul(field.from_integer(ci), field.exp(i)));
  }
  return acc;
}

ComplexApprox to_complex(const CycInt& a) {
  const auto m = static_cast<double>(a.order());
  const std::complex<double> zeta = std::polar(1.0, 2.0 * std::numbers::pi / m);
  const auto& c = a.coeffs();
  std::complex<double> acc = 0.0;
  double abs_sum = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) {
    const double ci = c[i].get_d();
    acc = acc * zeta + ci;
    abs_sum += std::abs(ci);
  }
  ComplexApprox out;
  out.value = acc;
  out.radius = abs_sum * DBL_EPSILON * 8.0 * static_cast<double>(c.size() + 1);
  if (!std::isfinite(out.radius) || !std::isfinite(acc.real()) || !std::isfinite(acc.imag())) {
    out.radius = std::numeric_limits<double>::infinity();
  }
  return out;
}

ScaledCyc::ScaledCyc(CycInt num, mpz_class den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw std::domain_error("ScaledCyc: zero denominator");
  if (den_ < 0) {
    den_ = -den_;
    num_ = -num_;
  }
  if (num_.is_zero()) {
    den_ = 1;
    return;
  }
  mpz_class g;
  const mpz_class content = num_.content();
  mpz_gcd(g.get_mpz_t(), content.get_mpz_t(), den_.get_mpz_t());
  if (g != 1) {
    std::vector<mpz_class> reduced = num_.coeffs();
    for (auto& c : reduced) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    num_ = CycInt(num_.ring(), std::move(reduced));
    den_ /= g;
  }
}

std::optional<mpq_class> ScaledCyc::as_rational() const {
  auto n = num_.as_rational_integer();
  if (!n) return std::nullopt;
  mpq_class out(*n, den_);
  out.canonicalize();
  return out;
}

nlohmann::ordered_json ScaledCyc::to_json() const {
  nlohmann::ordered_json j;
  j["num"] = num_.to_json();
  j["den"] = den_.get_str();
  return j;
}

}  // namespace jacobidet
