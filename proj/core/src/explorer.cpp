#include "jacobidet/explorer.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "jacobidet/characters.hpp"
#include "jacobidet/finite_field.hpp"
#include "jacobidet/parallel.hpp"
#include "jacobidet/theorems.hpp"

namespace jacobidet {

using json = nlohmann::ordered_json;

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json factorization_json(const BigFactorization& f) {
  json j;
  json factors = json::array();
  for (const auto& [p, e] : f.factors) factors.push_back(json::array({p.get_str(), e}));
  j["factors"] = factors;
  j["cofactor"] = f.cofactor.get_str();
  j["cofactor_probable_prime"] = f.cofactor_probable_prime;
  return j;
}

BigFactorization factorization_from_json(const json& j) {
  BigFactorization f;
  for (const auto& item : j.at("factors")) {
    f.factors.emplace_back(mpz_class(item.at(0).get<std::string>()), item.at(1).get<unsigned>());
  }
  f.cofactor = mpz_class(j.at("cofactor").get<std::string>());
  f.cofactor_probable_prime = j.at("cofactor_probable_prime").get<bool>();
  return f;
}

/// Largest e with base^e | v (v != 0, |base| >= 2).
unsigned valuation(mpz_class v, const mpz_class& base) {
  unsigned e = 0;
  while (v != 0 && mpz_divisible_p(v.get_mpz_t(), base.get_mpz_t())) {
    v /= base;
    ++e;
  }
  return e;
}

/// e with |v| = base^e, if any.
std::optional<unsigned> exact_power(const mpz_class& v, const mpz_class& base) {
  mpz_class a = abs(v);
  if (a == 0 || base < 2) return std::nullopt;
  const unsigned e = valuation(a, base);
  mpz_class check;
  mpz_pow_ui(check.get_mpz_t(), base.get_mpz_t(), e);
  if (check != a) return std::nullopt;
  return e;
}

std::string signed_power(const mpz_class& v, const std::string& base, unsigned e) {
  return std::string(v < 0 ? "-" : "") + base + "^" + std::to_string(e);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

const mpz_class* ExplorationRecord::integer() const {
  if (!det) return nullptr;
  return std::get_if<mpz_class>(&*det);
}

json ExplorationRecord::to_json() const {
  json j;
  j["q"] = q;
  j["k"] = k;
  j["variant"] = variant;
  j["size"] = size;
  if (det) {
    if (const auto* z = std::get_if<mpz_class>(&*det)) {
      j["det"] = z->get_str();
    } else {
      j["det"] = std::get<ScaledCyc>(*det).to_json();
    }
  } else {
    j["det"] = nullptr;
  }
  if (factorization) j["factorization"] = factorization_json(*factorization);
  j["method"] = method;
  if (congruence_ok) j["congruence_ok"] = *congruence_ok;
  if (rational) j["rational"] = *rational;
  if (galois_invariant) j["galois_invariant"] = *galois_invariant;
  j["matches"] = matches;
  j["timestamp"] = timestamp;
  if (!error.empty()) j["error"] = error;
  return j;
}

ExplorationRecord ExplorationRecord::from_json(const json& j) {
  ExplorationRecord r;
  r.q = j.at("q").get<std::uint32_t>();
  r.k = j.at("k").get<std::uint64_t>();
  r.variant = j.at("variant").get<std::string>();
  r.size = j.at("size").get<std::uint64_t>();
  const auto& d = j.at("det");
  if (d.is_string()) {
    r.det = mpz_class(d.get<std::string>());
  } else if (d.is_object()) {
    r.det = ScaledCyc(CycInt::from_json(d.at("num")), mpz_class(d.at("den").get<std::string>()));
  }
  if (j.contains("factorization")) r.factorization = factorization_from_json(j.at("factorization"));
  r.method = j.value("method", "");
  if (j.contains("congruence_ok")) r.congruence_ok = j.at("congruence_ok").get<bool>();
  if (j.contains("rational")) r.rational = j.at("rational").get<bool>();
  if (j.contains("galois_invariant")) r.galois_invariant = j.at("galois_invariant").get<bool>();
  r.matches = j.value("matches", std::vector<std::string>{});
  r.timestamp = j.value("timestamp", "");
  r.error = j.value("error", "");
  return r;
}

std::string format_factorization(const BigFactorization& f) {
  if (f.cofactor == 0) return "0";
  std::string out;
  for (const auto& [p, e] : f.factors) {
    if (!out.empty()) out += '*';
    out += p.get_str();
    if (e > 1) out += "^" + std::to_string(e);
  }
  if (f.cofactor > 1) {
    if (!out.empty()) out += '*';
    out += f.cofactor_probable_prime ? f.cofactor.get_str() : "(" + f.cofactor.get_str() + ")";
  }
  return out.empty() ? "1" : out;
}

ExplorationCache::ExplorationCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      auto record = ExplorationRecord::from_json(json::parse(line));
      records_.emplace(record.key(), std::move(record));
    } catch (const std::exception& e) {
      throw std::runtime_error(path_.string() + ":" + std::to_string(line_no) + ": bad cache line: " + e.what());
    }
  }
}

std::optional<ExplorationRecord> ExplorationCache::find(std::uint32_t q, std::uint64_t k,
                                                        const std::string& variant) const {
  std::lock_guard lock(mu_);
  auto it = records_.find({q, k, variant});
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

bool ExplorationCache::append(const ExplorationRecord& record) {
  if (!record.error.empty() || !record.det) return false;
  std::lock_guard lock(mu_);
  if (records_.count(record.key()) != 0) return false;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw std::runtime_error("cannot open cache for append: " + path_.string());
  out << record.to_json().dump() << '\n';
  out.flush();
  if (!out) throw std::runtime_error("cache write failed: " + path_.string());
  records_.emplace(record.key(), record);
  return true;
}

std::size_t ExplorationCache::size() const {
  std::lock_guard lock(mu_);
  return records_.size();
}

std::vector<std::string> match_closed_forms(const ExplorationRecord& record) {
  const mpz_class* det = record.integer();
  if (!det || record.variant != kVariantJqk) return {};
  const std::uint32_t q = record.q;
  const std::uint64_t k = record.k;
  const std::uint64_t m = (q - 1) / k;
  std::vector<std::string> out;

  if (abs(*det) == 1) out.push_back(*det > 0 ? "1" : "-1");
  if (k == 1 && q >= 3 && *det == detJ1_closed_form(q)) out.push_back("(q-1)^(q-3)");
  if (k == 2 && q >= 5 && is_prime(q) && *det == detJ2_closed_form(q)) out.push_back("J_p(2) closed form");
  if (abs(*det) != 1) {
    if (auto e = exact_power(*det, mpz_class(q - 1))) out.push_back(signed_power(*det, "(q-1)", *e));
    if (m >= 2 && m != q - 1) {
      if (auto e = exact_power(*det, mpz_class(static_cast<unsigned long>(m)))) {
        out.push_back(signed_power(*det, "m", *e));
      }
    }
    if (m >= 2 && *det != 0) {
      const mpz_class base(static_cast<unsigned long>(m));
      const unsigned e = valuation(*det, base);
      if (e >= 1) {
        mpz_class scale;
        mpz_pow_ui(scale.get_mpz_t(), base.get_mpz_t(), e);
        const mpz_class c = *det / scale;
        if (abs(c) >= 2 && abs(c) <= q) out.push_back(c.get_str() + "*m^" + std::to_string(e));
      }
    }
  }
  if (out.empty()) out.push_back("no-match");
  return out;
}

ExplorationRecord explore_Jqk_case(std::uint32_t q, std::uint64_t k, DetMethod method) {
  ExplorationRecord r;
  r.q = q;
  r.k = k;
  r.variant = kVariantJqk;
  r.method = std::string(to_string(method));
  r.timestamp = utc_timestamp();
  try {
    const auto pp = PrimePower::from_order(q);
    if (!pp) throw std::invalid_argument("not a prime power");
    if (k == 0 || (q - 1) % k != 0) throw std::invalid_argument("k does not divide q-1");
    r.size = (q - 1) / k - 1;
    const FiniteField field = FiniteField::build(q);
    const CycMatrix a = build_Jqk(field, k);
    DetResult result;
    switch (method) {
      case DetMethod::bareiss:
        result = det_bareiss_result(a);
        break;
      case DetMethod::crt:
        result = det_crt_integer(a);
        break;
      case DetMethod::float_check:
        throw std::invalid_argument("the float check cannot produce exact records");
    }
    const auto det = result.integer();
    if (!det) throw ArithmeticError("determinant is not a rational integer");
    r.det = *det;
    r.factorization = factorize_big(*det);
    mpz_class res;
    mpz_fdiv_r_ui(res.get_mpz_t(), det->get_mpz_t(), pp->p);
    const std::uint64_t m = (q - 1) / k;
    const unsigned long expected = thm1_congruence_sign(k, m) > 0 ? 1 % pp->p : pp->p - 1;
    r.congruence_ok = res == expected;
    r.matches = match_closed_forms(r);
  } catch (const std::exception& e) {
    r.det.reset();
    r.error = e.what();
  }
  return r;
}

std::vector<ExplorationRecord> explore_Jqk(const ExploreOptions& options, ExplorationCache* cache) {
  std::vector<std::pair<std::uint32_t, std::uint64_t>> cases;
  for (const auto& pp : prime_powers_up_to(options.q_max)) {
    if (pp.q < options.q_min) continue;
    for (std::uint64_t k : divisors(pp.q - 1)) {
      if (!options.k_filter.empty() &&
          std::find(options.k_filter.begin(), options.k_filter.end(), k) == options.k_filter.end()) {
        continue;
      }
      cases.emplace_back(pp.q, k);
    }
  }
  return parallel_map<ExplorationRecord>(cases.size(), options.jobs, [&](std::size_t i) {
    const auto [q, k] = cases[i];
    if (cache) {
      if (auto hit = cache->find(q, k, kVariantJqk)) return *hit;
    }
    ExplorationRecord r = explore_Jqk_case(q, k, options.method);
    if (cache) cache->append(r);
    return r;
  });
}

ExplorationRecord explore_greene(std::uint32_t q, GreeneVariant variant) {
  const auto pp = PrimePower::from_order(q);
  if (!pp) throw std::invalid_argument("explore_greene: q must be a prime power");
  const bool full = variant == GreeneVariant::full;
  if (full && q < 3) throw std::invalid_argument("explore_greene: full variant requires q >= 3");
  if (!full && (q % 2 == 0 || q < 5)) throw std::invalid_argument("explore_greene: even variant requires odd q >= 5");

  ExplorationRecord r;
  r.q = q;
  r.k = 0;
  r.variant = full ? kVariantGreeneFull : kVariantGreeneEven;
  r.method = "bareiss";
  r.timestamp = utc_timestamp();
  const FiniteField field = FiniteField::build(q);
  const auto ring = character_ring(field);
  const std::size_t n = full ? q - 2 : (q - 3) / 2;
  const std::int64_t step = full ? 1 : 2;
  r.size = n;

  CycMatrix num = make_cyc_matrix(n, n, ring);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const auto ii = static_cast<std::int64_t>(i) * step;
      const auto jj = static_cast<std::int64_t>(j) * step;
      num(i - 1, j - 1) = greene_binom_numerator(field, ii + jj, ii);
    }
  }
  const CycInt det_num = det_bareiss(num);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), q, n);
  ScaledCyc value(det_num, den);
  r.rational = value.as_rational().has_value();
  bool invariant = true;
  for (std::uint64_t u : ring->units()) {
    if (galois_apply(static_cast<std::int64_t>(u), value.num()) != value.num()) {
      invariant = false;
      break;
    }
  }
  r.galois_invariant = invariant;
  r.det = std::move(value);
  return r;
}

std::vector<ExplorationRecord> explore_greene_range(std::uint32_t q_min, std::uint32_t q_max, unsigned jobs,
                                                    ExplorationCache* cache) {
  std::vector<std::pair<std::uint32_t, GreeneVariant>> cases;
  for (const auto& pp : prime_powers_up_to(q_max)) {
    if (pp.q < q_min || pp.q < 3) continue;
    cases.emplace_back(pp.q, GreeneVariant::full);
    if (pp.q % 2 == 1 && pp.q >= 5) cases.emplace_back(pp.q, GreeneVariant::even);
  }
  return parallel_map<ExplorationRecord>(cases.size(), jobs, [&](std::size_t i) {
    const auto [q, variant] = cases[i];
    const std::string tag = variant == GreeneVariant::full ? kVariantGreeneFull : kVariantGreeneEven;
    if (cache) {
      if (auto hit = cache->find(q, 0, tag)) return *hit;
    }
    ExplorationRecord r;
    try {
      r = explore_greene(q, variant);
    } catch (const std::exception& e) {
      r.q = q;
      r.variant = tag;
      r.timestamp = utc_timestamp();
      r.error = e.what();
    }
    if (cache) cache->append(r);
    return r;
  });
}

std::string to_csv(const std::vector<ExplorationRecord>& records) {
  std::ostringstream out;
  out << "q,k,m,det,factorization,congruence_ok\n";
  for (const auto& r : records) {
    const bool jqk = r.variant == kVariantJqk;
    std::string det;
    if (const mpz_class* z = r.integer()) {
      det = z->get_str();
    } else if (r.det) {
      const auto& s = std::get<ScaledCyc>(*r.det);
      if (auto rat = s.as_rational()) {
        det = rat->get_str();
      } else {
        det = s.to_json().dump();
      }
    } else {
      det = "error: " + r.error;
    }
    out << r.q << ',' << (jqk ? std::to_string(r.k) : r.variant) << ','
        << (jqk && r.k != 0 ? std::to_string((r.q - 1) / r.k) : "") << ',' << csv_field(det) << ','
        << (r.factorization ? format_factorization(*r.factorization) : "") << ','
        << (r.congruence_ok ? (*r.congruence_ok ? "true" : "false") : "") << '\n';
  }
  return out.str();
}

}  // namespace jacobidet
