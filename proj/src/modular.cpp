#include "gesforge/modular.hpp"

#include <stdexcept>
#include <string>

namespace gesforge {

namespace {

std::vector<int> prime_factors(int n) {
  std::vector<int> out;
  for (int f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) {
        n /= f;
      }
    }
  }
  if (n > 1) {
    out.push_back(n);
  }
  return out;
}

}  // namespace

ModularImage::ModularImage(int order, int skip) : order_(order) {
  if (order < 1) {
    throw std::invalid_argument("modular image requires a positive order");
  }
  const std::uint64_t n = static_cast<std::uint64_t>(order);
  std::uint64_t k = ((1ULL << 30) + n - 1) / n;
  int found = -1;
  while (true) {
    const std::uint64_t cand = k * n + 1;
    if (cand >= (1ULL << 31)) {
      throw std::runtime_error("no admissible modulus below 2^31 for order " + std::to_string(order));
    }
    if (is_prime(static_cast<long long>(cand)) && ++found == skip) {
      q_ = cand;
      break;
    }
    ++k;
  }
  const auto factors = prime_factors(order);
  for (std::uint64_t x = 2;; ++x) {
    const std::uint64_t g = pow(x, (q_ - 1) / n);
    bool primitive = true;
    for (int r : factors) {
      if (pow(g, n / static_cast<std::uint64_t>(r)) == 1) {
        primitive = false;
        break;
      }
    }
    if (order == 1 || primitive) {
      g_ = g;
      break;
    }
  }
  powers_.resize(static_cast<std::size_t>(order));
  std::uint64_t acc = 1;
  for (auto& v : powers_) {
    v = acc;
    acc = mul(acc, g_);
  }
}

std::uint64_t ModularImage::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t result = 1;
  a %= q_;
  while (e > 0) {
    if (e & 1ULL) {
      result = mul(result, a);
    }
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

std::uint64_t ModularImage::inv(std::uint64_t a) const {
  if (a % q_ == 0) {
    throw std::domain_error("inverse of zero in F_q");
  }
  return pow(a, q_ - 2);
}

std::uint64_t ModularImage::root_power(long long e) const {
  long long r = e % order_;
  if (r < 0) {
    r += order_;
  }
  return powers_[static_cast<std::size_t>(r)];
}

std::optional<std::uint64_t> ModularImage::map(const Rational& r) const {
  const unsigned long den = mpz_fdiv_ui(r.get_den_mpz_t(), q_);
  if (den == 0) {
    return std::nullopt;
  }
  const unsigned long num = mpz_fdiv_ui(r.get_num_mpz_t(), q_);
  return mul(num, inv(den));
}

std::optional<std::uint64_t> ModularImage::map(const CycNum& x) const {
  if (x.order() == 0) {
    return 0;
  }
  if (x.order() != order_) {
    throw std::invalid_argument("modular image order does not match element order");
  }
  std::uint64_t acc = 0;
  const auto& c = x.coeffs();
  for (std::size_t t = 0; t < c.size(); ++t) {
    if (sgn(c[t]) == 0) {
      continue;
    }
    const auto v = map(c[t]);
    if (!v) {
      return std::nullopt;
    }
    acc = add(acc, mul(*v, powers_[t]));
  }
  return acc;
}

std::optional<ModMatrix> ModularImage::map(const CycMatrix& m) const {
  ModMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const auto v = map(m(i, j));
      if (!v) {
        return std::nullopt;
      }
      out(i, j) = *v;
    }
  }
  return out;
}

std::size_t rank_mod(ModMatrix a, const ModularImage& f) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  Eigen::Index rank = 0;
  for (Eigen::Index c = 0; c < cols && rank < rows; ++c) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = rank; r < rows; ++r) {
      if (a(r, c) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) {
      continue;
    }
    a.row(pivot).swap(a.row(rank));
    const std::uint64_t inv = f.inv(a(rank, c));
    for (Eigen::Index r = rank + 1; r < rows; ++r) {
      if (a(r, c) == 0) {
        continue;
      }
      const std::uint64_t factor = f.mul(a(r, c), inv);
      for (Eigen::Index k = c; k < cols; ++k) {
        a(r, k) = f.sub(a(r, k), f.mul(factor, a(rank, k)));
      }
    }
    ++rank;
  }
  return static_cast<std::size_t>(rank);
}

namespace {

class SubsetScanner {
 public:
  SubsetScanner(const ModMatrix& a, const ModularImage& f,
                const std::function<void(std::span<const int>)>& on_dependent)
      : a_(a),
        f_(f),
        on_dependent_(on_dependent),
        rows_(static_cast<int>(a.rows())),
        width_(static_cast<int>(a.cols())),
        basis_(static_cast<std::size_t>(width_), std::vector<std::uint64_t>(static_cast<std::size_t>(width_))),
        pivots_(static_cast<std::size_t>(width_)),
        chosen_(static_cast<std::size_t>(width_)) {}

  std::size_t run() {
    if (width_ > rows_) {
      return 0;
    }
    descend(0, 0);
    return visited_;
  }

 private:
  void descend(int start, int depth) {
    if (depth == width_) {
      ++visited_;
      return;
    }
    const int remaining = width_ - depth;
    for (int i = start; i <= rows_ - remaining; ++i) {
      auto& v = basis_[static_cast<std::size_t>(depth)];
      for (int k = 0; k < width_; ++k) {
        v[static_cast<std::size_t>(k)] = a_(i, k);
      }
      for (int b = 0; b < depth; ++b) {
        const auto& row = basis_[static_cast<std::size_t>(b)];
        const int pc = pivots_[static_cast<std::size_t>(b)];
        const std::uint64_t factor = v[static_cast<std::size_t>(pc)];
        if (factor == 0) {
          continue;
        }
        for (int k = 0; k < width_; ++k) {
          v[static_cast<std::size_t>(k)] = f_.sub(v[static_cast<std::size_t>(k)], f_.mul(factor, row[static_cast<std::size_t>(k)]));
        }
      }
      int pc = -1;
      for (int k = 0; k < width_; ++k) {
        if (v[static_cast<std::size_t>(k)] != 0) {
          pc = k;
          break;
        }
      }
      chosen_[static_cast<std::size_t>(depth)] = i;
      if (pc < 0) {
        emit_completions(i + 1, depth + 1);
        continue;
      }
      const std::uint64_t inv = f_.inv(v[static_cast<std::size_t>(pc)]);
      for (int k = 0; k < width_; ++k) {
        v[static_cast<std::size_t>(k)] = f_.mul(v[static_cast<std::size_t>(k)], inv);
      }
      pivots_[static_cast<std::size_t>(depth)] = pc;
      descend(i + 1, depth + 1);
    }
  }

  // Every completion of the current (already dependent) prefix is dependent.
  void emit_completions(int start, int depth) {
    if (depth == width_) {
      ++visited_;
      on_dependent_(std::span<const int>(chosen_.data(), chosen_.size()));
      return;
    }
    const int remaining = width_ - depth;
    for (int i = start; i <= rows_ - remaining; ++i) {
      chosen_[static_cast<std::size_t>(depth)] = i;
      emit_completions(i + 1, depth + 1);
    }
  }

  const ModMatrix& a_;
  const ModularImage& f_;
  const std::function<void(std::span<const int>)>& on_dependent_;
  int rows_;
  int width_;
  std::vector<std::vector<std::uint64_t>> basis_;
  std::vector<int> pivots_;
  std::vector<int> chosen_;
  std::size_t visited_ = 0;
};

}  // namespace

std::size_t scan_dependent_row_subsets(const ModMatrix& a, const ModularImage& field,
                                       const std::function<void(std::span<const int>)>& on_dependent) {
  return SubsetScanner(a, field, on_dependent).run();
}

}  // namespace gesforge
