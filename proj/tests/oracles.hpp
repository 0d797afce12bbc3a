// Independent reference computations used only by the tests. Nothing here
// calls into the elimination, modular or alternating-search code paths.
#ifndef GESFORGE_TESTS_ORACLES_HPP
#define GESFORGE_TESTS_ORACLES_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <vector>

namespace oracle {

using cd = std::complex<double>;

inline cd root(long long e, int p) {
  const long long r = ((e % p) + p) % p;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / p);
}

/// Determinant by the Leibniz permutation sum.
inline cd leibniz_det(const Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  cd total = 0.0;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) {
          ++inversions;
        }
      }
    }
    cd term = inversions % 2 == 0 ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i) {
      term *= m(i, perm[static_cast<std::size_t>(i)]);
    }
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline Eigen::MatrixXcd dft_block(int p, const std::vector<int>& rows, const std::vector<int>& cols) {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          root(static_cast<long long>(rows[i]) * cols[j], p);
    }
  }
  return m;
}

/// Primes up to n by the sieve of Eratosthenes.
inline std::vector<int> sieve(int n) {
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  std::vector<int> out;
  for (int i = 2; i <= n; ++i) {
    if (composite[static_cast<std::size_t>(i)]) {
      continue;
    }
    out.push_back(i);
    for (long long j = static_cast<long long>(i) * i; j <= n; j += i) {
      composite[static_cast<std::size_t>(j)] = true;
    }
  }
  return out;
}

/// Product vector coefficients by explicit digit expansion (party 0 most significant).
inline Eigen::VectorXcd kron_digits(const std::vector<Eigen::VectorXcd>& locals) {
  long long total = 1;
  for (const auto& l : locals) {
    total *= l.size();
  }
  Eigen::VectorXcd out(total);
  for (long long j = 0; j < total; ++j) {
    long long rest = j;
    cd amp = 1.0;
    for (std::size_t m = locals.size(); m-- > 0;) {
      const auto d = locals[m].size();
      amp *= locals[m](rest % d);
      rest /= d;
    }
    out(j) = amp;
  }
  return out;
}

/// Schmidt coefficients from the eigenvalues of the reduced density matrix X X^dag.
inline std::vector<double> schmidt_via_density(const Eigen::MatrixXcd& reshaped) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(reshaped * reshaped.adjoint());
  std::vector<double> out;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    out.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(k))));
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

inline Eigen::Vector2cd qubit(double theta, double phi) {
  return Eigen::Vector2cd(std::cos(theta / 2), std::polar(std::sin(theta / 2), phi));
}

inline double product_value(const Eigen::Matrix4cd& G, double t1, double p1, double t2, double p2) {
  const Eigen::Vector2cd a = qubit(t1, p1);
  const Eigen::Vector2cd b = qubit(t2, p2);
  Eigen::Vector4cd x;
  x << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
  return std::real(x.dot(G * x));
}

/// Minimum of <a(x)b|G|a(x)b> over qubit pairs by a dense Bloch-sphere grid
/// followed by shrinking-grid refinement around the best few cells.
inline double grid_min_two_qubit(const Eigen::Matrix4cd& G, int coarse = 24) {
  struct Cell {
    double v, t1, p1, t2, p2;
  };
  std::vector<Cell> cells;
  const double pi = std::numbers::pi;
  for (int i = 0; i <= coarse; ++i) {
    for (int j = 0; j < 2 * coarse; ++j) {
      for (int k = 0; k <= coarse; ++k) {
        for (int l = 0; l < 2 * coarse; ++l) {
          const double t1 = pi * i / coarse;
          const double p1 = pi * j / coarse;
          const double t2 = pi * k / coarse;
          const double p2 = pi * l / coarse;
          cells.push_back({product_value(G, t1, p1, t2, p2), t1, p1, t2, p2});
        }
      }
    }
  }
  std::partial_sort(cells.begin(), cells.begin() + 16, cells.end(),
                    [](const Cell& a, const Cell& b) { return a.v < b.v; });
  double best = cells.front().v;
  for (int c = 0; c < 16; ++c) {
    Cell cur = cells[static_cast<std::size_t>(c)];
    double step = pi / coarse;
    while (step > 1e-9) {
      bool improved = false;
      for (int dim = 0; dim < 4; ++dim) {
        for (double sgn : {-1.0, 1.0}) {
          Cell trial = cur;
          double* coord[] = {&trial.t1, &trial.p1, &trial.t2, &trial.p2};
          *coord[dim] += sgn * step;
          trial.v = product_value(G, trial.t1, trial.p1, trial.t2, trial.p2);
          if (trial.v < cur.v) {
            cur = trial;
            improved = true;
          }
        }
      }
      if (!improved) {
        step *= 0.5;
      }
    }
    best = std::min(best, cur.v);
  }
  return best;
}

}  // namespace oracle

#endif  // GESFORGE_TESTS_ORACLES_HPP
