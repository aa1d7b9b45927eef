#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "jacobidet/characters.hpp"
#include "jacobidet/detengine.hpp"
#include "jacobidet/explorer.hpp"
#include "jacobidet/finite_field.hpp"
#include "jacobidet/selftest.hpp"
#include "jacobidet/theorems.hpp"

namespace jacobidet::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

PrimePower require_field_order(std::uint64_t q) {
  auto pp = PrimePower::from_order(q);
  if (!pp) throw UsageError("q = " + std::to_string(q) + " is not a prime power");
  if (q > FiniteField::kDefaultMaxOrder) {
    throw UsageError("q = " + std::to_string(q) + " exceeds the field table cap " +
                     std::to_string(FiniteField::kDefaultMaxOrder));
  }
  return *pp;
}

void require_divisor(std::uint64_t q, std::uint64_t k) {
  if (k == 0 || (q - 1) % k != 0) {
    throw UsageError("k = " + std::to_string(k) + " does not divide q-1 = " + std::to_string(q - 1));
  }
}

/// Writes to --out when given, otherwise to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::trunc);
      if (!file_) throw UsageError("cannot open output file " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

int emit_reports(const std::vector<VerificationReport>& reports, const std::string& format, const std::string& path,
                 std::ostream& out, std::ostream& err, const std::string& label) {
  Sink sink(path, out);
  if (format == "table") {
    sink.get() << format_table(reports);
  } else {
    for (const auto& r : reports) sink.get() << r.to_json().dump() << '\n';
  }
  const auto s = summarize(reports);
  err << label << ": " << s.passed << " passed, " << s.failed << " failed, " << s.skipped << " skipped\n";
  return s.failed == 0 ? kExitPass : kExitFail;
}

struct VerifyArgs {
  std::uint32_t q_max = 0;
  std::string suite = "all";
  unsigned jobs = 1;
  std::string format = "json";
  std::string out;
  std::optional<unsigned> n_max;
  unsigned lucas_trials = 1000;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const auto suite = parse_suite(a.suite);
  if (!suite) throw UsageError("unknown suite " + a.suite);
  if (a.q_max < 2) throw UsageError("--q-max must be at least 2");
  SuiteOptions options;
  options.q_max = a.q_max;
  options.jobs = a.jobs;
  options.lucas_trials = a.lucas_trials;
  if (a.n_max) {
    options.appendix_n_max = *a.n_max;
    options.beta_n_max = *a.n_max;
  }
  return emit_reports(run_suite(*suite, options), a.format, a.out, out, err, "verify");
}

struct DetArgs {
  std::uint64_t q = 0;
  std::uint64_t k = 0;
  std::string method = "all";
  std::string format = "text";
};

std::string value_text(const DetResult& r) {
  if (auto z = r.integer()) return z->get_str();
  if (!r.conclusive()) return "inconclusive";
  return std::get<CycInt>(r.value).to_json().dump();
}

int cmd_det(const DetArgs& a, std::ostream& out, std::ostream& err) {
  require_field_order(a.q);
  require_divisor(a.q, a.k);
  std::vector<DetMethod> methods;
  if (a.method == "all") {
    methods = {DetMethod::bareiss, DetMethod::crt, DetMethod::float_check};
  } else if (auto m = parse_det_method(a.method)) {
    methods = {*m};
  } else {
    throw UsageError("unknown method " + a.method);
  }
  const FiniteField field = FiniteField::build(a.q);
  const CycMatrix matrix = build_Jqk(field, a.k);

  std::vector<DetResult> results;
  for (DetMethod m : methods) {
    switch (m) {
      case DetMethod::bareiss:
        results.push_back(det_bareiss_result(matrix));
        break;
      case DetMethod::crt:
        results.push_back(det_crt_integer(matrix));
        break;
      case DetMethod::float_check:
        results.push_back(det_float_check(matrix));
        break;
    }
  }

  int code = kExitPass;
  const DetResult* primary = nullptr;
  for (const auto& r : results) {
    if (r.conclusive()) {
      primary = &r;
      break;
    }
  }
  for (const auto& r : results) {
    if (!r.conclusive()) {
      err << "det: " << to_string(r.method) << " inconclusive\n";
      if (results.size() == 1) code = kExitFail;
      continue;
    }
    if (primary && value_text(r) != value_text(*primary)) {
      err << "det: engine disagreement: " << to_string(primary->method) << " = " << value_text(*primary) << ", "
          << to_string(r.method) << " = " << value_text(r) << '\n';
      code = kExitFail;
    }
  }

  if (a.format == "json") {
    json j;
    j["q"] = a.q;
    j["k"] = a.k;
    j["m"] = (a.q - 1) / a.k;
    json arr = json::array();
    for (const auto& r : results) arr.push_back(r.to_json());
    j["results"] = arr;
    out << j.dump() << '\n';
  } else {
    out << (primary ? value_text(*primary) : "inconclusive") << '\n';
  }
  return code;
}

struct JacobiArgs {
  std::uint64_t q = 0;
  std::int64_t i = 0;
  std::int64_t j = 0;
};

int cmd_jacobi(const JacobiArgs& a, std::ostream& out) {
  require_field_order(a.q);
  const FiniteField field = FiniteField::build(a.q);
  const CycInt value = jacobi_sum(field, a.i, a.j);
  const ComplexApprox approx = to_complex(value);
  json j;
  j["q"] = a.q;
  j["i"] = a.i;
  j["j"] = a.j;
  j["value"] = value.to_json();
  j["approx"] = {{"re", approx.value.real()}, {"im", approx.value.imag()}, {"radius", approx.radius}};
  out << j.dump() << '\n';
  return kExitPass;
}

struct FieldArgs {
  std::uint64_t q = 0;
};

int cmd_field(const FieldArgs& a, std::ostream& out) {
  require_field_order(a.q);
  out << FiniteField::build(a.q).to_json().dump() << '\n';
  return kExitPass;
}

struct TableArgs {
  std::uint32_t q_max = 0;
  std::uint32_t q_min = 2;
  bool greene = false;
  std::vector<std::uint64_t> k;
  std::string out;
  std::string format = "csv";
  std::string method = "crt";
  unsigned jobs = 1;
  std::string cache;
  bool no_cache = false;
};

int cmd_table(const TableArgs& a, std::ostream& out, std::ostream& err) {
  if (a.q_max < 2) throw UsageError("--q-max must be at least 2");
  if (a.q_max > FiniteField::kDefaultMaxOrder) throw UsageError("--q-max exceeds the field table cap");
  const auto method = parse_det_method(a.method);
  if (!method || *method == DetMethod::float_check) throw UsageError("--method must be bareiss or crt");

  std::optional<ExplorationCache> cache;
  if (!a.no_cache) {
    std::string path = a.cache;
    if (path.empty()) {
      const char* env = std::getenv("JACOBIDET_CACHE");
      path = env && *env ? env : "jacobidet-cache.jsonl";
    }
    cache.emplace(path);
  }
  ExplorationCache* cache_ptr = cache ? &*cache : nullptr;

  std::vector<ExplorationRecord> records;
  if (a.greene) {
    records = explore_greene_range(a.q_min, a.q_max, a.jobs, cache_ptr);
  } else {
    ExploreOptions options;
    options.q_min = a.q_min;
    options.q_max = a.q_max;
    options.k_filter = a.k;
    options.method = *method;
    options.jobs = a.jobs;
    records = explore_Jqk(options, cache_ptr);
  }

  Sink sink(a.out, out);
  if (a.format == "json") {
    for (const auto& r : records) sink.get() << r.to_json().dump() << '\n';
  } else {
    sink.get() << to_csv(records);
  }

  std::size_t errors = 0, congruence_failures = 0;
  for (const auto& r : records) {
    if (!r.error.empty()) {
      ++errors;
      err << "table: q=" << r.q << " k=" << r.k << " " << r.variant << ": " << r.error << '\n';
    }
    if (r.congruence_ok && !*r.congruence_ok) ++congruence_failures;
  }
  err << "table: " << records.size() << " records, " << errors << " errors, " << congruence_failures
      << " congruence failures\n";
  return errors == 0 && congruence_failures == 0 ? kExitPass : kExitFail;
}

struct SelftestArgs {
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string format = "json";
};

int cmd_selftest(const SelftestArgs& a, std::ostream& out, std::ostream& err) {
  return emit_reports(run_selftest(a.seed, a.jobs), a.format, "", out, err, "selftest");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact determinants of Jacobi-sum matrices and verification suites", "jacobidet"};
  app.require_subcommand(1);

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Run verification suites and emit JSON-lines reports");
  v->add_option("--q-max", verify.q_max, "Largest field order")->required();
  v->add_option("--suite", verify.suite, "Suite to run")
      ->check(CLI::IsMember({"thm1", "corollary", "detJ1", "detJ2", "teichmuller", "lerch", "lucas", "apparatus",
                             "appendix", "beta", "all"}));
  v->add_option("--jobs", verify.jobs, "Worker threads")->check(CLI::PositiveNumber);
  v->add_option("--format", verify.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  v->add_option("--out", verify.out, "Write reports to this file");
  v->add_option("--n-max", verify.n_max, "Matrix size bound for the appendix and beta suites")
      ->check(CLI::PositiveNumber);
  v->add_option("--lucas-trials", verify.lucas_trials, "Random (a, c) draws per prime")->check(CLI::PositiveNumber);

  DetArgs det;
  auto* d = app.add_subcommand("det", "Determinant of J_q(k)");
  d->add_option("--q", det.q, "Field order")->required();
  d->add_option("--k", det.k, "Divisor of q-1")->required();
  d->add_option("--method", det.method, "bareiss, crt, float or all")
      ->check(CLI::IsMember({"bareiss", "crt", "float", "all"}));
  d->add_option("--format", det.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  JacobiArgs jac;
  auto* j = app.add_subcommand("jacobi", "Exact Jacobi sum J(chi^i, chi^j)");
  j->add_option("--q", jac.q, "Field order")->required();
  j->add_option("--i", jac.i, "First exponent")->required();
  j->add_option("--j", jac.j, "Second exponent")->required();

  FieldArgs fld;
  auto* f = app.add_subcommand("field", "Dump the field tables used for F_q");
  f->add_option("--q", fld.q, "Field order")->required();

  TableArgs table;
  auto* t = app.add_subcommand("table", "Explore determinants without closed forms");
  t->add_option("--q-max", table.q_max, "Largest field order")->required();
  t->add_option("--q-min", table.q_min, "Smallest field order");
  t->add_flag("--greene", table.greene, "Greene binomial matrices instead of J_q(k)");
  t->add_option("--k", table.k, "Restrict to these k (repeatable)");
  t->add_option("--out", table.out, "Output file");
  t->add_option("--format", table.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  t->add_option("--method", table.method, "bareiss or crt")->check(CLI::IsMember({"bareiss", "crt"}));
  t->add_option("--jobs", table.jobs, "Worker threads")->check(CLI::PositiveNumber);
  t->add_option("--cache", table.cache, "Cache file (default $JACOBIDET_CACHE or ./jacobidet-cache.jsonl)");
  t->add_flag("--no-cache", table.no_cache, "Do not read or write the cache");

  SelftestArgs self;
  auto* s = app.add_subcommand("selftest", "Randomized module property suites");
  s->add_option("--seed", self.seed, "Random seed");
  s->add_option("--jobs", self.jobs, "Worker threads")->check(CLI::PositiveNumber);
  s->add_option("--format", self.format, "json or table")->check(CLI::IsMember({"json", "table"}));

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("jacobidet");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitPass;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "jacobidet: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*v) return cmd_verify(verify, out, err);
    if (*d) return cmd_det(det, out, err);
    if (*j) return cmd_jacobi(jac, out);
    if (*f) return cmd_field(fld, out);
    if (*t) return cmd_table(table, out, err);
    if (*s) return cmd_selftest(self, out, err);
  } catch (const UsageError& e) {
    err << "jacobidet: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "jacobidet: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "jacobidet: error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}

}  // namespace jacobidet::cli
