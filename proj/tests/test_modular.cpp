#include <doctest.h>

#include <random>

#include "gesforge/composite.hpp"
#include "gesforge/cyclo.hpp"
#include "gesforge/modular.hpp"
#include "oracles.hpp"

using namespace gesforge;

namespace {

std::size_t binomial(int n, int k) {
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  }
  return r;
}

std::vector<long> z(const std::vector<mpz_class>& v) {
  std::vector<long> out;
  for (const auto& x : v) {
    out.push_back(x.get_si());
  }
  return out;
}

}  // namespace

TEST_CASE("modulus and root have the advertised properties") {
  for (int N : {2, 3, 4, 6, 7, 9, 11, 12, 13}) {
    for (int skip : {0, 1}) {
      const ModularImage f(N, skip);
      const auto q = f.modulus();
      CHECK(is_prime(static_cast<long long>(q)));
      CHECK(q % static_cast<std::uint64_t>(N) == 1);
      CHECK(q >= (1ULL << 30));
      CHECK(q < (1ULL << 31));
      CHECK(f.pow(f.root(), static_cast<std::uint64_t>(N)) == 1);
      for (int d = 1; d < N; ++d) {
        if (N % d == 0) {
          CHECK(f.pow(f.root(), static_cast<std::uint64_t>(d)) != 1);
        }
      }
    }
    CHECK(ModularImage(N, 0).modulus() != ModularImage(N, 1).modulus());
  }
}

TEST_CASE("the map is a ring homomorphism") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> num(-9, 9);
  for (int p : {3, 5, 7, 11}) {
    const ModularImage f(p);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Rational> ca, cb;
      for (int t = 0; t < p - 1; ++t) {
        ca.emplace_back(num(rng), 1 + (rng() % 3));
        cb.emplace_back(num(rng), 1);
      }
      const CycNum a(p, ca);
      const CycNum b(p, cb);
      const auto ia = f.map(a).value();
      const auto ib = f.map(b).value();
      CHECK(f.map(a + b).value() == f.add(ia, ib));
      CHECK(f.map(a * b).value() == f.mul(ia, ib));
    }
    CHECK(f.map(CycNum::root_power(3, p)).value() == f.root_power(3));
  }
}

TEST_CASE("inverse and denominators") {
  const ModularImage f(5);
  CHECK(f.mul(f.inv(12345), 12345) == 1);
  CHECK(f.map(Rational(1, 2)).value() == f.inv(2));
  const Rational bad(1, static_cast<long>(f.modulus()));
  CHECK_FALSE(f.map(bad).has_value());
}

TEST_CASE("modular rank agrees with exact rank") {
  std::mt19937 rng(77);
  for (int p : {5, 7, 11}) {
    const ModularImage f(p);
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<int> rows, cols;
      for (int k = 0; k < 4; ++k) {
        rows.push_back(static_cast<int>(rng() % static_cast<unsigned>(p)));
      }
      for (int k = 0; k < 3; ++k) {
        cols.push_back(static_cast<int>(rng() % static_cast<unsigned>(p)));
      }
      const CycMatrix m = dft_submatrix(p, rows, cols);
      CHECK(rank_mod(f.map(m).value(), f) == cyc_rank(m));
    }
  }
}

TEST_CASE("subset scan visits C(K, c) subsets and finds every dependent one") {
  const int p = 7;
  const ModularImage f(p);
  // Rows 1 and 4 coincide, row 5 is zero.
  const CycMatrix base = dft_submatrix(p, {0, 1, 2, 3, 1, 0, 6}, {0, 1, 2});
  CycMatrix m = base;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    m(5, j) = CycNum(p);
  }
  const ModMatrix image = f.map(m).value();
  std::vector<std::vector<int>> found;
  const auto visited = scan_dependent_row_subsets(image, f, [&](std::span<const int> s) {
    found.emplace_back(s.begin(), s.end());
  });
  CHECK(visited == binomial(7, 3));

  std::vector<std::vector<int>> brute;
  for (int a = 0; a < 7; ++a) {
    for (int b = a + 1; b < 7; ++b) {
      for (int c = b + 1; c < 7; ++c) {
        CycMatrix sub(3, 3);
        sub.row(0) = m.row(a);
        sub.row(1) = m.row(b);
        sub.row(2) = m.row(c);
        if (cyc_det(sub).is_zero()) {
          brute.push_back({a, b, c});
        }
      }
    }
  }
  CHECK(found == brute);
  CHECK_FALSE(brute.empty());
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(z(cyclotomic_polynomial(1)) == std::vector<long>{-1, 1});
  CHECK(z(cyclotomic_polynomial(2)) == std::vector<long>{1, 1});
  CHECK(z(cyclotomic_polynomial(4)) == std::vector<long>{1, 0, 1});
  CHECK(z(cyclotomic_polynomial(6)) == std::vector<long>{1, -1, 1});
  CHECK(z(cyclotomic_polynomial(9)) == std::vector<long>{1, 0, 0, 1, 0, 0, 1});
  CHECK(z(cyclotomic_polynomial(12)) == std::vector<long>{1, 0, -1, 0, 1});
  CHECK(z(cyclotomic_polynomial(7)) == std::vector<long>(7, 1));
}

TEST_CASE("polynomial remainder") {
  // x^3 + 2x + 5 mod (x^2 + 1) = x + 5
  const std::vector<mpz_class> poly{5, 2, 0, 1};
  const std::vector<mpz_class> div{1, 0, 1};
  CHECK(z(poly_mod_monic(poly, div)) == std::vector<long>{5, 1});
  CHECK_THROWS(poly_mod_monic(poly, {1, 2}));
}

TEST_CASE("composite-order minor test agrees with the floating determinant") {
  std::mt19937 rng(31);
  for (int N : {4, 6, 8, 9, 5, 7}) {
    std::vector<int> idx(static_cast<std::size_t>(N));
    std::iota(idx.begin(), idx.end(), 0);
    for (int trial = 0; trial < 40; ++trial) {
      const int size = 1 + static_cast<int>(rng() % 4);
      std::shuffle(idx.begin(), idx.end(), rng);
      std::vector<int> rows(idx.begin(), idx.begin() + size);
      std::shuffle(idx.begin(), idx.end(), rng);
      std::vector<int> cols(idx.begin(), idx.begin() + size);
      const double mag = std::abs(oracle::leibniz_det(oracle::dft_block(N, rows, cols)));
      // Nonzero values of these algebraic integers stay far from 1e-6.
      CHECK(dft_minor_vanishes(N, rows, cols) == (mag < 1e-6));
    }
  }
  // Rows {0, 2} and columns {0, 2} of the order-4 DFT: [[1, 1], [1, 1]].
  CHECK(dft_minor_vanishes(4, {0, 2}, {0, 2}));
  CHECK_FALSE(dft_minor_vanishes(4, {0, 1}, {0, 1}));
}
