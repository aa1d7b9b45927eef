#pragma once

// Data gathering for determinants without a known closed form: det J_q(k)
// for general k and Greene character-binomial matrices. Results go to an
// append-only JSON-lines cache keyed by (q, k, variant).

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "jacobidet/cyclotomic.hpp"
#include "jacobidet/detengine.hpp"
#include "jacobidet/numtheory.hpp"

namespace jacobidet {

inline constexpr const char* kVariantJqk = "jqk";
inline constexpr const char* kVariantGreeneFull = "greene-full";
inline constexpr const char* kVariantGreeneEven = "greene-even";

enum class GreeneVariant { full, even };

struct ExplorationRecord {
  std::uint32_t q = 0;
  std::uint64_t k = 0;  // 0 for Greene records
  std::string variant = kVariantJqk;
  std::uint64_t size = 0;  // matrix dimension
  std::optional<std::variant<mpz_class, ScaledCyc>> det;
  std::optional<BigFactorization> factorization;  // of |det| for integer records
  std::string method;
  std::optional<bool> congruence_ok;     // J_q(k) records
  std::optional<bool> rational;          // Greene records
  std::optional<bool> galois_invariant;  // Greene records
  std::vector<std::string> matches;
  std::string timestamp;
  std::string error;

  std::tuple<std::uint32_t, std::uint64_t, std::string> key() const { return {q, k, variant}; }
  const mpz_class* integer() const;

  nlohmann::ordered_json to_json() const;
  static ExplorationRecord from_json(const nlohmann::ordered_json& j);
};

/// "2^4*3"; a leftover composite cofactor is shown in parentheses.
std::string format_factorization(const BigFactorization& f);

class ExplorationCache {
 public:
  /// Loads existing records; a missing file is an empty cache.
  explicit ExplorationCache(std::filesystem::path path);

  const std::filesystem::path& path() const { return path_; }
  std::optional<ExplorationRecord> find(std::uint32_t q, std::uint64_t k, const std::string& variant) const;
  /// Appends one line and flushes. Returns false (writing nothing) when the
  /// key is already present or the record carries an error.
  bool append(const ExplorationRecord& record);
  std::size_t size() const;

 private:
  std::filesystem::path path_;
  mutable std::mutex mu_;
  std::map<std::tuple<std::uint32_t, std::uint64_t, std::string>, ExplorationRecord> records_;
};

/// Candidate-library annotations for integer records; "no-match" if none apply.
std::vector<std::string> match_closed_forms(const ExplorationRecord& record);

/// det J_q(k) with factorization, congruence re-check and annotations.
/// Errors are captured in the record.
ExplorationRecord explore_Jqk_case(std::uint32_t q, std::uint64_t k, DetMethod method = DetMethod::crt);

struct ExploreOptions {
  std::uint32_t q_min = 2;
  std::uint32_t q_max = 16;
  std::vector<std::uint64_t> k_filter;  // empty: every k | q-1
  DetMethod method = DetMethod::crt;
  unsigned jobs = 1;
};

/// Sweeps prime powers in [q_min, q_max], reusing cached records and
/// appending new ones. Output is sorted by (q, k).
std::vector<ExplorationRecord> explore_Jqk(const ExploreOptions& options, ExplorationCache* cache);

/// Greene matrix determinant as an exact ScaledCyc. Throws
/// std::invalid_argument when the variant does not apply to q.
ExplorationRecord explore_greene(std::uint32_t q, GreeneVariant variant);

/// Both variants for every applicable prime power in [q_min, q_max].
std::vector<ExplorationRecord> explore_greene_range(std::uint32_t q_min, std::uint32_t q_max, unsigned jobs,
                                                    ExplorationCache* cache);

/// Columns q, k, m, det, factorization, congruence_ok. Greene records put
/// the variant tag in the k column.
std::string to_csv(const std::vector<ExplorationRecord>& records);

}  // namespace jacobidet
