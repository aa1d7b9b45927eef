#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "jacobidet/cyclotomic.hpp"
#include "jacobidet/matrix.hpp"
#include "jacobidet/report.hpp"

namespace jacobidet {

/// Random element with coefficients in [-bound, bound].
CycInt random_cyc(const RingPtr& ring, std::mt19937_64& rng, int bound = 5);
IntMatrix random_int_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, int bound = 9);
CycMatrix random_cyc_matrix(std::size_t rows, std::size_t cols, const RingPtr& ring, std::mt19937_64& rng,
                            int bound = 3);

/// Laplace expansion along the first row; a slow oracle for small matrices.
mpz_class det_cofactor(const IntMatrix& a);
CycInt det_cofactor(const CycMatrix& a);

/// Module-level property suites (fields, cyclotomic arithmetic, characters,
/// determinant engines). One report per property, counting passing cases.
std::vector<VerificationReport> run_selftest(std::uint64_t seed = 1, unsigned jobs = 1);

}  // namespace jacobidet
