#include "jacobidet/detengine.hpp"

#include <cfloat>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "jacobidet/numtheory.hpp"

namespace jacobidet {

namespace {

// Single-step Bareiss. `update(aij, akk, aik, akj)` returns aij*akk - aik*akj,
// `Div` divides exactly by a fixed previous pivot.
template <class T, class MakeDiv, class Update>
T bareiss(Matrix<T> a, const T& one, MakeDiv make_div, Update update) {
  const std::size_t n = a.rows();
  if (!a.is_square()) throw std::invalid_argument("det: matrix is not square");
  if (n == 0) return one;
  bool negate = false;
  using Div = decltype(make_div(one));
  std::optional<Div> prev;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a(piv, k) == a.zero()) ++piv;
    if (piv == n) return a.zero();
    if (piv != k) {
      a.swap_rows(piv, k);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        T num = update(a(i, j), a(k, k), a(i, k), a(k, j));
        a(i, j) = prev ? prev->divide(num) : std::move(num);
      }
    }
    if (k + 1 < n) prev.emplace(make_div(a(k, k)));
  }
  T det = a(n - 1, n - 1);
  if (negate) det = -det;
  return det;
}

struct MpzDivisor {
  mpz_class d;
  mpz_class divide(const mpz_class& x) const {
    if (mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) == 0) {
      throw ArithmeticError("det_bareiss: inexact integer division");
    }
    mpz_class out;
    mpz_divexact(out.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    return out;
  }
};

mpz_class ceil_sqrt(const mpz_class& x) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  if (r * r < x) ++r;
  return r;
}

// Determinant of a dense matrix over Z/ell, ell < 2^32.
std::uint64_t det_mod(std::vector<std::uint64_t> a, std::size_t n, std::uint64_t ell) {
  std::uint64_t det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv * n + k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[k * n + j]);
      det = (ell - det) % ell;
    }
    const std::uint64_t pivot = a[k * n + k];
    det = det * pivot % ell;
    const std::uint64_t inv = invmod(pivot, ell);
    for (std::size_t i = k + 1; i < n; ++i) {
      const std::uint64_t f = a[i * n + k] * inv % ell;
      if (f == 0) continue;
      for (std::size_t j = k; j < n; ++j) {
        a[i * n + j] = (a[i * n + j] + (ell - f) * a[k * n + j]) % ell;
      }
    }
  }
  return det;
}

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(r);
  for (std::size_t i = 0; i < r; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    std::size_t i = r;
    while (i > 0 && cur[i - 1] == n - r + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < r; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

template <class T, class Det>
CauchyBinetResult<T> cauchy_binet_impl(const Matrix<T>& m, const Matrix<T>& n, const T& zero, Det det) {
  if (m.cols() != n.rows() || m.rows() != n.cols()) throw std::invalid_argument("cauchy_binet: dimension mismatch");
  const std::size_t r = m.rows(), inner = m.cols();
  if (r > inner) throw std::invalid_argument("cauchy_binet: requires rows(M) <= cols(M)");
  CauchyBinetResult<T> out{det(m * n), zero, false};
  std::vector<std::size_t> all_r(r);
  std::iota(all_r.begin(), all_r.end(), 0);
  for (const auto& s : combinations(inner, r)) {
    out.expansion += det(m.select(all_r, s)) * det(n.select(s, all_r));
  }
  out.equal = out.direct == out.expansion;
  return out;
}

}  // namespace

std::string_view to_string(DetMethod method) {
  switch (method) {
    case DetMethod::bareiss:
      return "bareiss";
    case DetMethod::crt:
      return "crt";
    case DetMethod::float_check:
      return "float";
  }
  return "unknown";
}

std::optional<DetMethod> parse_det_method(std::string_view name) {
  if (name == "bareiss") return DetMethod::bareiss;
  if (name == "crt") return DetMethod::crt;
  if (name == "float") return DetMethod::float_check;
  return std::nullopt;
}

std::optional<mpz_class> DetResult::integer() const {
  if (const auto* z = std::get_if<mpz_class>(&value)) return *z;
  if (const auto* c = std::get_if<CycInt>(&value)) return c->as_rational_integer();
  return std::nullopt;
}

nlohmann::ordered_json DetResult::to_json() const {
  nlohmann::ordered_json j;
  if (const auto* z = std::get_if<mpz_class>(&value)) {
    j["value"] = z->get_str();
  } else if (const auto* c = std::get_if<CycInt>(&value)) {
    if (auto n = c->as_rational_integer()) {
      j["value"] = n->get_str();
    } else {
      j["value"] = c->to_json();
    }
  } else {
    j["value"] = nullptr;
  }
  j["method"] = std::string(to_string(method));
  j["certificate"] = certificate;
  return j;
}

mpz_class det_bareiss(IntMatrix a) {
  return bareiss(
      std::move(a), mpz_class(1), [](const mpz_class& d) { return MpzDivisor{d}; },
      [](const mpz_class& aij, const mpz_class& akk, const mpz_class& aik, const mpz_class& akj) {
        mpz_class out = aij * akk;
        mpz_submul(out.get_mpz_t(), aik.get_mpz_t(), akj.get_mpz_t());
        return out;
      });
}

CycInt det_bareiss(CycMatrix a) {
  const CycInt one(a.zero().ring(), mpz_class(1));
  return bareiss(
      std::move(a), one, [](const CycInt& d) { return CycDivisor(d); },
      [](const CycInt& aij, const CycInt& akk, const CycInt& aik, const CycInt& akj) {
        return CycInt::mul_sub(aij, akk, aik, akj);
      });
}

DetResult det_bareiss_result(const CycMatrix& a) {
  DetResult out;
  out.method = DetMethod::bareiss;
  CycInt det = det_bareiss(a);
  out.certificate["ring_order"] = a.zero().order();
  out.certificate["dimension"] = a.rows();
  out.certificate["rational_integer"] = det.as_rational_integer().has_value();
  out.value = std::move(det);
  return out;
}

mpz_class hadamard_bound(const CycMatrix& a) {
  mpz_class product = 1;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    mpz_class sq = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const mpz_class ub = a(i, j).abs_coeff_sum();
      sq += ub * ub;
    }
    product *= sq;
  }
  return ceil_sqrt(product);
}

mpz_class hadamard_bound(const IntMatrix& a) {
  mpz_class product = 1;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    mpz_class sq = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) sq += a(i, j) * a(i, j);
    product *= sq;
  }
  return ceil_sqrt(product);
}

std::uint64_t root_of_unity_mod(std::uint64_t m, std::uint64_t ell) {
  if (!is_prime(ell) || (ell - 1) % m != 0) throw std::domain_error("root_of_unity_mod: need prime ell = 1 mod m");
  if (m == 1) return 1;
  const Factorization mf = factorize(m);
  for (std::uint64_t u = 2; u < ell; ++u) {
    const std::uint64_t t = powmod(u, (ell - 1) / m, ell);
    bool exact = true;
    for (const auto& [r, e] : mf) {
      (void)e;
      if (powmod(t, m / r, ell) == 1) {
        exact = false;
        break;
      }
    }
    if (exact) return t;
  }
  throw std::logic_error("root_of_unity_mod: no element of the requested order");
}

std::uint64_t next_prime_1_mod(std::uint64_t m, std::uint64_t floor) {
  // Smallest ell > floor with ell = 1 (mod m).
  std::uint64_t ell = floor + 1;
  const std::uint64_t r = (ell - 1) % m;
  if (r != 0) ell += m - r;
  while (!is_prime(ell)) ell += m;
  return ell;
}

std::uint64_t det_mod_prime(const CycMatrix& a, std::uint64_t ell, std::uint64_t t) {
  if (!a.is_square()) throw std::invalid_argument("det_mod_prime: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1 % ell;
  // Validates the order of t once through the checked entry point.
  (void)reduce_mod_prime(a.zero(), ell, t);
  std::vector<std::uint64_t> powers(a.zero().ring()->degree());
  std::uint64_t x = 1;
  for (auto& pw : powers) {
    pw = x;
    x = mulmod(x, t, ell);
  }
  std::vector<std::uint64_t> entries(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) entries[i * n + j] = eval_mod_prime_unchecked(a(i, j), ell, powers);
  }
  return det_mod(std::move(entries), n, ell);
}

DetResult det_crt_integer(const CycMatrix& a, const CrtOptions& options) {
  if (!a.is_square()) throw std::invalid_argument("det_crt_integer: matrix is not square");
  const std::uint64_t m = a.zero().order();
  DetResult out;
  out.method = DetMethod::crt;
  const mpz_class bound = hadamard_bound(a);
  const mpz_class target = 2 * bound;

  std::vector<std::uint64_t> primes, residues;
  mpz_class modulus = 1, value = 0;
  std::uint64_t ell = std::max<std::uint64_t>(m, options.min_prime);
  auto next = [&]() {
    ell = next_prime_1_mod(m, ell);
    if (ell > options.max_prime) throw std::runtime_error("det_crt_integer: ran out of primes below the cap");
    return ell;
  };
  while (modulus <= target) {
    const std::uint64_t p = next();
    const std::uint64_t r = det_mod_prime(a, p, root_of_unity_mod(m, p));
    // value += modulus * ((r - value) * modulus^{-1} mod p)
    const std::uint64_t vmod = mpz_fdiv_ui(value.get_mpz_t(), p);
    const std::uint64_t mmod = mpz_fdiv_ui(modulus.get_mpz_t(), p);
    const std::uint64_t h = mulmod((r + p - vmod) % p, invmod(mmod, p), p);
    value += modulus * mpz_class(static_cast<unsigned long>(h));
    modulus *= static_cast<unsigned long>(p);
    primes.push_back(p);
    residues.push_back(r);
  }
  if (2 * value > modulus) value -= modulus;

  const std::uint64_t extra = next();
  const std::uint64_t extra_residue = det_mod_prime(a, extra, root_of_unity_mod(m, extra));
  const std::uint64_t predicted = mpz_fdiv_ui(value.get_mpz_t(), extra);
  if (predicted != extra_residue) {
    throw ArithmeticError("det_crt_integer: held-out prime " + std::to_string(extra) +
                          " disagrees with the reconstruction (determinant not a rational integer?)");
  }

  auto& cert = out.certificate;
  cert["primes"] = primes;
  cert["residues"] = residues;
  cert["extra_prime"] = extra;
  cert["extra_residue"] = extra_residue;
  cert["hadamard_bound"] = bound.get_str();
  cert["modulus"] = modulus.get_str();
  out.value = value;
  return out;
}

DetResult det_float_check(const CycMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("det_float_check: matrix is not square");
  using cd = std::complex<double>;
  const std::size_t n = a.rows();
  std::vector<cd> lu(n * n);
  std::vector<double> radius(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const ComplexApprox e = to_complex(a(i, j));
      lu[i * n + j] = e.value;
      radius[i * n + j] = e.radius;
    }
  }
  const std::vector<cd> original = lu;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu[i * n + k]) > std::abs(lu[piv * n + k])) piv = i;
    }
    if (lu[piv * n + k] == cd(0.0)) continue;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu[piv * n + j], lu[k * n + j]);
      std::swap(perm[piv], perm[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const cd l = lu[i * n + k] / lu[k * n + k];
      lu[i * n + k] = l;
      for (std::size_t j = k + 1; j < n; ++j) lu[i * n + j] -= l * lu[k * n + j];
    }
  }
  cd det = negate ? cd(-1.0) : cd(1.0);
  for (std::size_t k = 0; k < n; ++k) det *= lu[k * n + k];

  // Backward error of LU: L U = P A + E with |E| <= gamma |L||U|; complex
  // operations are charged 4u each.
  const double u = DBL_EPSILON / 2.0;
  const double nu = 4.0 * static_cast<double>(n + 1) * u;
  const double gamma = nu / (1.0 - nu);
  double log_prod = 0.0;
  double log1p_sum = 0.0;
  bool any_zero_row = false;
  double plain_prod = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row_sq = 0.0, rad_sq = 0.0, lu_sq = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row_sq += std::norm(original[perm[i] * n + j]);
      rad_sq += radius[perm[i] * n + j] * radius[perm[i] * n + j];
      double s = 0.0;
      for (std::size_t k = 0; k <= std::min(i, j); ++k) {
        const double l = (k == i) ? 1.0 : std::abs(lu[i * n + k]);
        s += l * std::abs(lu[k * n + j]);
      }
      lu_sq += s * s;
    }
    const double rad = std::sqrt(rad_sq);
    const double row = std::sqrt(row_sq) + rad;
    const double pert = gamma * std::sqrt(lu_sq) + rad;
    plain_prod *= row + pert;
    if (row == 0.0) {
      any_zero_row = true;
    } else {
      log_prod += std::log(row);
      log1p_sum += std::log1p(pert / row);
    }
  }
  const double perturbation = any_zero_row ? plain_prod : std::exp(log_prod) * std::expm1(log1p_sum);
  const double budget = (gamma / (1.0 - gamma)) * std::abs(det) + perturbation;
  const double rounded = std::nearbyint(det.real());
  const double distance = std::abs(det - cd(rounded));

  DetResult out;
  out.method = DetMethod::float_check;
  out.certificate["approx_re"] = det.real();
  out.certificate["approx_im"] = det.imag();
  out.certificate["distance"] = distance;
  out.certificate["error_budget"] = budget;
  const bool conclusive = std::isfinite(budget) && budget < 0.25 && distance < 0.25;
  out.certificate["conclusive"] = conclusive;
  if (conclusive) out.value = mpz_class(rounded);
  return out;
}

mpq_class det_rational(const RatMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("det_rational: matrix is not square");
  const std::size_t n = a.rows();
  IntMatrix cleared(n, n);
  mpz_class scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) cleared(i, j) = a(i, j).get_num() * (l / a(i, j).get_den());
    scale *= l;
  }
  mpq_class out(det_bareiss(std::move(cleared)), scale);
  out.canonicalize();
  return out;
}

CauchyBinetResult<mpz_class> cauchy_binet(const IntMatrix& m, const IntMatrix& n) {
  return cauchy_binet_impl(m, n, mpz_class(0), [](const IntMatrix& x) { return det_bareiss(x); });
}

CauchyBinetResult<CycInt> cauchy_binet(const CycMatrix& m, const CycMatrix& n) {
  return cauchy_binet_impl(m, n, m.zero(), [](const CycMatrix& x) { return det_bareiss(x); });
}

CycMatrix to_cyc(const IntMatrix& a, const RingPtr& ring) {
  CycMatrix out(a.rows(), a.cols(), CycInt(ring));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = CycInt(ring, a(i, j));
  }
  return out;
}

}  // namespace jacobidet
