#include "gesforge/composite.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>

#include "gesforge/cyclo.hpp"

namespace gesforge {

std::vector<mpz_class> poly_mod_monic(std::vector<mpz_class> poly, const std::vector<mpz_class>& divisor) {
  if (divisor.empty() || divisor.back() != 1) {
    throw std::invalid_argument("divisor must be monic");
  }
  const std::size_t deg = divisor.size() - 1;
  for (std::size_t top = poly.size(); top-- > deg;) {
    const mpz_class lead = poly[top];
    if (lead == 0) {
      continue;
    }
    for (std::size_t t = 0; t <= deg; ++t) {
      poly[top - deg + t] -= lead * divisor[t];
    }
  }
  poly.resize(std::min(poly.size(), deg));
  return poly;
}

std::vector<mpz_class> cyclotomic_polynomial(int n) {
  if (n < 1) {
    throw std::invalid_argument("cyclotomic polynomial index must be positive");
  }
  // x^n - 1 divided by Phi_d for every proper divisor d of n.
  std::vector<mpz_class> poly(static_cast<std::size_t>(n) + 1, 0);
  poly[0] = -1;
  poly[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) {
      continue;
    }
    const auto phi = cyclotomic_polynomial(d);
    const std::size_t dd = phi.size() - 1;
    std::vector<mpz_class> quotient(poly.size() - dd, 0);
    for (std::size_t top = poly.size(); top-- > dd;) {
      const mpz_class lead = poly[top];
      quotient[top - dd] = lead;
      if (lead == 0) {
        continue;
      }
      for (std::size_t t = 0; t <= dd; ++t) {
        poly[top - dd + t] -= lead * phi[t];
      }
    }
    poly = std::move(quotient);
  }
  return poly;
}

bool dft_minor_vanishes(int order, const std::vector<int>& rows, const std::vector<int>& cols) {
  if (rows.size() != cols.size()) {
    throw std::invalid_argument("minor requires equally many rows and columns");
  }
  if (rows.empty()) {
    return false;
  }
  if (is_prime(order)) {
    return cyc_det(dft_submatrix(order, rows, cols)).is_zero();
  }
  const std::size_t k = rows.size();
  if (k > 24) {
    throw std::invalid_argument("composite-order minor too large for Laplace expansion");
  }
  const std::size_t n = static_cast<std::size_t>(order);
  using Poly = std::vector<mpz_class>;
  // partial[mask]: signed sum over injections of rows 0..|mask|-1 into mask.
  std::vector<Poly> partial(std::size_t{1} << k);
  partial[0].assign(n, 0);
  partial[0][0] = 1;
  for (std::uint32_t mask = 0; mask + 1 < (1U << k); ++mask) {
    const Poly& cur = partial[mask];
    if (cur.empty()) {
      continue;
    }
    const std::size_t r = static_cast<std::size_t>(std::popcount(mask));
    for (std::size_t c = 0; c < k; ++c) {
      if (mask & (1U << c)) {
        continue;
      }
      const bool negate = std::popcount(mask >> (c + 1)) % 2 == 1;
      const std::size_t shift =
          static_cast<std::size_t>((static_cast<long long>(rows[r]) * cols[c]) % order + order) % n;
      Poly& next = partial[mask | (1U << c)];
      if (next.empty()) {
        next.assign(n, 0);
      }
      for (std::size_t t = 0; t < n; ++t) {
        if (negate) {
          next[(t + shift) % n] -= cur[t];
        } else {
          next[(t + shift) % n] += cur[t];
        }
      }
    }
  }
  const Poly reduced = poly_mod_monic(partial.back(), cyclotomic_polynomial(order));
  for (const auto& c : reduced) {
    if (c != 0) {
      return false;
    }
  }
  return true;
}

}  // namespace gesforge
