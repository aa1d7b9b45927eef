#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace jacobidet {

enum class Status { pass, fail, skipped };

std::string_view to_string(Status status);

/// One verified identity. `status` is pass exactly when the serialized
/// expected and computed values are equal.
struct VerificationReport {
  std::string check_id;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  nlohmann::ordered_json expected;
  nlohmann::ordered_json computed;
  Status status = Status::skipped;
  std::string anchor;
  std::string note;

  static VerificationReport compare(std::string check_id, nlohmann::ordered_json params,
                                    nlohmann::ordered_json expected, nlohmann::ordered_json computed,
                                    std::string anchor);
  static VerificationReport skipped(std::string check_id, nlohmann::ordered_json params, std::string anchor,
                                    std::string reason);
  static VerificationReport failure(std::string check_id, nlohmann::ordered_json params, std::string anchor,
                                    std::string error);

  nlohmann::ordered_json to_json() const;
};

/// Sorts by (q, k, check_id); q falls back to p, m, then n_max.
void sort_reports(std::vector<VerificationReport>& reports);

struct ReportSummary {
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
};

ReportSummary summarize(const std::vector<VerificationReport>& reports);

/// Human-readable pass/fail table grouped by check id.
std::string format_table(const std::vector<VerificationReport>& reports);

}  // namespace jacobidet
