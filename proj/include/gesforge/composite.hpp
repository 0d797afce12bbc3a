#ifndef GESFORGE_COMPOSITE_HPP
#define GESFORGE_COMPOSITE_HPP

#include <gmpxx.h>

#include <vector>

namespace gesforge {

/// Integer coefficients of the N-th cyclotomic polynomial, lowest degree first.
std::vector<mpz_class> cyclotomic_polynomial(int n);

/// Remainder of `poly` (lowest degree first) modulo the monic `divisor`.
std::vector<mpz_class> poly_mod_monic(std::vector<mpz_class> poly, const std::vector<mpz_class>& divisor);

/**
 * Exact zero test for the minor of the N x N DFT matrix [w^(ij)] on the
 * given rows and columns, valid for any order N >= 1.
 *
 * Prime N goes through CycNum elimination. Composite N uses a
 * division-free Laplace expansion in Z[x]/(x^N - 1) followed by reduction
 * modulo the N-th cyclotomic polynomial; integer arithmetic only.
 */
bool dft_minor_vanishes(int order, const std::vector<int>& rows, const std::vector<int>& cols);

}  // namespace gesforge

#endif  // GESFORGE_COMPOSITE_HPP
