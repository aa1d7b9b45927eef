#include "jacobidet/report.hpp"

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <map>
#include <sstream>
#include <tuple>

namespace jacobidet {

std::string_view to_string(Status status) {
  switch (status) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::skipped:
      return "skipped";
  }
  return "unknown";
}

VerificationReport VerificationReport::compare(std::string check_id, nlohmann::ordered_json params,
                                               nlohmann::ordered_json expected, nlohmann::ordered_json computed,
                                               std::string anchor) {
  VerificationReport r;
  r.check_id = std::move(check_id);
  r.params = std::move(params);
  r.status = expected == computed ? Status::pass : Status::fail;
  r.expected = std::move(expected);
  r.computed = std::move(computed);
  r.anchor = std::move(anchor);
  return r;
}

VerificationReport VerificationReport::skipped(std::string check_id, nlohmann::ordered_json params,
                                               std::string anchor, std::string reason) {
  VerificationReport r;
  r.check_id = std::move(check_id);
  r.params = std::move(params);
  r.status = Status::skipped;
  r.anchor = std::move(anchor);
  r.note = std::move(reason);
  return r;
}

VerificationReport VerificationReport::failure(std::string check_id, nlohmann::ordered_json params,
                                               std::string anchor, std::string error) {
  VerificationReport r;
  r.check_id = std::move(check_id);
  r.params = std::move(params);
  r.status = Status::fail;
  r.anchor = std::move(anchor);
  r.note = std::move(error);
  return r;
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["check_id"] = check_id;
  j["params"] = params;
  j["expected"] = expected;
  j["computed"] = computed;
  j["status"] = std::string(to_string(status));
  j["anchor"] = anchor;
  if (!note.empty()) j["note"] = note;
  return j;
}

namespace {

std::int64_t param_or(const nlohmann::ordered_json& params, std::initializer_list<const char*> keys) {
  for (const char* key : keys) {
    auto it = params.find(key);
    if (it != params.end() && it->is_number_integer()) return it->get<std::int64_t>();
  }
  return 0;
}

}  // namespace

void sort_reports(std::vector<VerificationReport>& reports) {
  auto key = [](const VerificationReport& r) {
    return std::make_tuple(param_or(r.params, {"q", "p", "m", "n_max"}), param_or(r.params, {"k"}),
                           std::cref(r.check_id));
  };
  std::stable_sort(reports.begin(), reports.end(),
                   [&](const VerificationReport& a, const VerificationReport& b) { return key(a) < key(b); });
}

ReportSummary summarize(const std::vector<VerificationReport>& reports) {
  ReportSummary s;
  for (const auto& r : reports) {
    switch (r.status) {
      case Status::pass:
        ++s.passed;
        break;
      case Status::fail:
        ++s.failed;
        break;
      case Status::skipped:
        ++s.skipped;
        break;
    }
  }
  return s;
}

std::string format_table(const std::vector<VerificationReport>& reports) {
  std::map<std::string, ReportSummary> by_check;
  for (const auto& r : reports) {
    auto& s = by_check[r.check_id];
    if (r.status == Status::pass) ++s.passed;
    if (r.status == Status::fail) ++s.failed;
    if (r.status == Status::skipped) ++s.skipped;
  }
  std::ostringstream out;
  out << std::left << std::setw(32) << "check" << std::right << std::setw(8) << "pass" << std::setw(8) << "fail"
      << std::setw(9) << "skipped" << '\n';
  for (const auto& [id, s] : by_check) {
    out << std::left << std::setw(32) << id << std::right << std::setw(8) << s.passed << std::setw(8) << s.failed
        << std::setw(9) << s.skipped << '\n';
  }
  const auto total = summarize(reports);
  out << std::left << std::setw(32) << "TOTAL" << std::right << std::setw(8) << total.passed << std::setw(8)
      << total.failed << std::setw(9) << total.skipped << '\n';
  for (const auto& r : reports) {
    if (r.status != Status::fail) continue;
    out << "FAIL " << r.check_id << ' ' << r.params.dump() << (r.note.empty() ? "" : " : " + r.note) << '\n';
  }
  return out.str();
}

}  // namespace jacobidet
