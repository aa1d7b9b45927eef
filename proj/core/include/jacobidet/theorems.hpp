#pragma once

// Verification harness: builds each object, checks each identity, and
// returns structured reports. Checks never throw for mathematical failures;
// those are recorded as failed reports.

#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "jacobidet/detengine.hpp"
#include "jacobidet/finite_field.hpp"
#include "jacobidet/matrix.hpp"
#include "jacobidet/report.hpp"

namespace jacobidet {

/// [J(chi^{ki}, chi^{kj})] for 1 <= i, j <= m-1, m = (q-1)/k.
/// Throws std::invalid_argument unless k >= 1 divides q-1.
CycMatrix build_Jqk(const FiniteField& field, std::uint64_t k);

/// Shared field and determinant cache. Every (q, k, method) determinant is
/// computed at most once, even under concurrent requests.
class VerificationContext {
 public:
  std::shared_ptr<const FiniteField> field(std::uint32_t q);
  /// Determinant of J_q(k) for the default generator. Exceptions from the
  /// engine propagate to every caller.
  DetResult jqk_det(std::uint32_t q, std::uint64_t k, DetMethod method);

 private:
  std::mutex mu_;
  std::map<std::uint32_t, std::shared_ptr<const FiniteField>> fields_;
  std::map<std::tuple<std::uint32_t, std::uint64_t, DetMethod>, std::shared_future<DetResult>> dets_;
};

/// Exponents r used for the generator-independence check: every unit r >= 2
/// when q <= 32, otherwise the first five.
std::vector<std::uint64_t> alternative_generator_exponents(std::uint32_t q);

std::vector<VerificationReport> check_thm1(VerificationContext& ctx, std::uint32_t q, std::uint64_t k);
std::vector<VerificationReport> check_corollary(std::uint32_t q, std::uint64_t k);
std::vector<VerificationReport> check_detJ1(VerificationContext& ctx, std::uint32_t q);
std::vector<VerificationReport> check_detJ2(VerificationContext& ctx, std::uint32_t p);
std::vector<VerificationReport> check_teichmuller(VerificationContext& ctx, std::uint32_t q);
std::vector<VerificationReport> check_lerch(std::uint64_t m);
std::vector<VerificationReport> check_lucas(std::uint32_t p, unsigned trials);
std::vector<VerificationReport> check_proof_apparatus(VerificationContext& ctx, std::uint32_t q);
std::vector<VerificationReport> check_appendix(unsigned n_max);
std::vector<VerificationReport> check_beta(unsigned n_max);

// Closed forms.
mpz_class detJ1_closed_form(std::uint64_t q);
/// Requires an odd prime p >= 5.
mpz_class detJ2_closed_form(std::uint64_t p);
/// (-1)^{(k+1)(m^2-m)/2}
int thm1_congruence_sign(std::uint64_t k, std::uint64_t m);
/// (-1)^{((k+1)m^2 - (k-1)m - 2)/2}
int corollary_congruence_sign(std::uint64_t k, std::uint64_t m);
/// Sign of x -> a x on Z/m by the residue-class formula; gcd(a, m) = 1.
int lerch_sign_formula(std::int64_t a, std::uint64_t m);
/// Sign of x -> a x on Z/m by counting inversions.
int lerch_sign_brute(std::int64_t a, std::uint64_t m);
/// (-1)^{n(n-1)/2} prod_{r<n} (r!)^3 / (n+r)!
mpq_class beta_det_closed_form(unsigned n);
/// Row-reduction constants alpha_k for n = (p-1)/2.
mpz_class alpha_constant(std::uint64_t k, std::uint64_t n);
mpz_class beta_p_closed_form(std::uint64_t p);

// Appendix matrices.
IntMatrix binomial_matrix_C(unsigned n);  // [C(i+j, i)], 1 <= i, j <= n
IntMatrix pascal_matrix_D(unsigned n);    // [C(i+j-2, i-1)], 1 <= i, j <= n
RatMatrix beta_matrix(unsigned n);        // [(i-1)!(j-1)!/(i+j-1)!]
/// [C(ki+kj, ki)], 1 <= i, j <= m-1.
IntMatrix corollary_matrix(std::uint64_t k, std::uint64_t m);

// Proof apparatus objects, exposed for tests.
CycInt vandermonde_delta(const FiniteField& field);
CycInt derivative_product(const FiniteField& field, FiniteField::Element y);
int one_minus_permutation_sign(const FiniteField& field);
CycMatrix matrix_M(const FiniteField& field);
CycMatrix matrix_N(const FiniteField& field);
/// x_i = chi(i^2), 1 <= i <= n, for a prime field.
std::vector<CycInt> square_character_values(const FiniteField& field);
CycInt square_vandermonde_S(const FiniteField& field);
CycMatrix matrix_A(const FiniteField& field);
CycMatrix matrix_B(const FiniteField& field);
/// B with a leading column of ones.
CycMatrix matrix_B_tilde(const FiniteField& field);

enum class Suite { thm1, corollary, detJ1, detJ2, teichmuller, lerch, lucas, apparatus, appendix, beta, all };

std::string_view to_string(Suite suite);
std::optional<Suite> parse_suite(std::string_view name);

struct SuiteOptions {
  std::uint32_t q_max = 27;
  unsigned appendix_n_max = 40;
  unsigned beta_n_max = 15;
  unsigned lucas_trials = 1000;
  unsigned jobs = 1;
};

/// Runs every case of the suite for prime powers up to q_max (lerch: m up to
/// q_max; lucas: primes up to q_max), sorted.
std::vector<VerificationReport> run_suite(Suite suite, const SuiteOptions& options);

}  // namespace jacobidet
