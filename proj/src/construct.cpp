#include "gesforge/construct.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

namespace gesforge {

Scale Scale::rational(const Rational& r) {
  Scale s;
  s.exact = r;
  s.exact->canonicalize();
  s.value = {s.exact->get_d(), 0.0};
  return s;
}

Scale Scale::floating(std::complex<double> v) {
  Scale s;
  s.value = v;
  s.exact.reset();
  return s;
}

bool Scale::is_zero() const { return exact ? sgn(*exact) == 0 : value == std::complex<double>(0.0, 0.0); }

ConstructionParams ConstructionParams::homogeneous(int n, int d, int K, int p) {
  ConstructionParams params;
  params.n = n;
  params.dims.assign(static_cast<std::size_t>(std::max(n, 0)), d);
  params.K = K;
  params.p = p;
  return params;
}

bool ConstructionParams::is_homogeneous() const {
  return std::adjacent_find(dims.begin(), dims.end(), std::not_equal_to<>()) == dims.end();
}

ProductState ProductVector::state() const {
  ProductState out;
  out.reserve(locals.size());
  for (const auto& l : locals) {
    out.push_back(l.amplitudes);
  }
  return out;
}

Eigen::VectorXcd ProductVector::full() const {
  Eigen::VectorXcd acc = Eigen::VectorXcd::Ones(1);
  for (const auto& l : locals) {
    Eigen::VectorXcd next = Eigen::kroneckerProduct(acc, l.amplitudes);
    acc = std::move(next);
  }
  return acc;
}

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& s : parts) {
    if (!out.empty()) {
      out += "; ";
    }
    out += s;
  }
  return out;
}

}  // namespace

InvalidParams::InvalidParams(std::vector<std::string> violations)
    : std::invalid_argument("invalid construction parameters: " + join(violations)),
      violations_(std::move(violations)) {}

long long smallest_prime_geq(long long x) {
  long long c = std::max(x, 2LL);
  while (!is_prime(c)) {
    ++c;
  }
  return c;
}

long long total_dimension(const std::vector<int>& dims) {
  long long d = 1;
  for (int v : dims) {
    d *= v;
  }
  return d;
}

long long radix_weight(const std::vector<int>& dims, int m) {
  long long w = 1;
  for (std::size_t k = static_cast<std::size_t>(m) + 1; k < dims.size(); ++k) {
    w *= dims[k];
  }
  return w;
}

long long min_member_count(const std::vector<int>& dims) {
  const std::size_t n = dims.size();
  long long best = 0;
  for (unsigned mask = 1; mask + 1 < (1U << n); mask += 2) {
    long long ds = 1;
    long long dsbar = 1;
    for (std::size_t m = 0; m < n; ++m) {
      ((mask >> m) & 1U ? ds : dsbar) *= dims[m];
    }
    best = std::max(best, ds + dsbar - 1);
  }
  return best;
}

long long max_ges_dimension(const std::vector<int>& dims) { return total_dimension(dims) - min_member_count(dims); }

ConstructionParams with_default_prime(ConstructionParams params) {
  if (params.p == 0 && !params.dims.empty()) {
    params.p = static_cast<int>(smallest_prime_geq(total_dimension(params.dims)));
  }
  return params;
}

std::vector<std::string> validate_params(const ConstructionParams& params) {
  std::vector<std::string> v;
  if (params.n < 2) {
    v.push_back("party count n must be at least 2 (got " + std::to_string(params.n) + ")");
  }
  if (params.dims.size() != static_cast<std::size_t>(std::max(params.n, 0))) {
    v.push_back("dims must list one local dimension per party");
  }
  bool dims_ok = !params.dims.empty();
  for (int d : params.dims) {
    if (d < 2) {
      v.push_back("every local dimension must be at least 2 (got " + std::to_string(d) + ")");
      dims_ok = false;
      break;
    }
  }
  if (dims_ok && params.dims.size() > 20) {
    v.push_back("party count too large");
    dims_ok = false;
  }
  if (!is_prime(params.p)) {
    v.push_back("p must be prime (got " + std::to_string(params.p) + ")");
  }
  if (dims_ok && params.dims.size() >= 2) {
    const long long D = total_dimension(params.dims);
    if (params.p < D) {
      v.push_back("p must be at least prod(dims) = " + std::to_string(D) + " (got " + std::to_string(params.p) + ")");
    }
    const long long kmin = min_member_count(params.dims);
    if (params.K < kmin) {
      v.push_back("K must be at least " + std::to_string(kmin) + " (got " + std::to_string(params.K) + ")");
    }
    if (params.K > D - 1) {
      v.push_back("K must be at most prod(dims) - 1 = " + std::to_string(D - 1) + " (got " +
                  std::to_string(params.K) + ")");
    }
  }
  if (params.h) {
    const auto& h = *params.h;
    if (h.size() != params.dims.size()) {
      v.push_back("h must have one row per party");
    } else {
      for (std::size_t m = 0; m < h.size(); ++m) {
        if (h[m].size() != static_cast<std::size_t>(params.dims[m])) {
          v.push_back("h row " + std::to_string(m) + " must have dims[" + std::to_string(m) + "] entries");
        }
        for (const auto& s : h[m]) {
          if (s.is_zero()) {
            v.push_back("h entries must be nonzero (party " + std::to_string(m) + ")");
            break;
          }
        }
      }
    }
  }
  return v;
}

ExponentTable exponent_table(const ConstructionParams& params) {
  if (auto v = validate_params(params); !v.empty()) {
    throw InvalidParams(std::move(v));
  }
  const auto n = static_cast<std::size_t>(params.n);
  ExponentTable table(static_cast<std::size_t>(params.K), std::vector<std::vector<long long>>(n));
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t m = 0; m < n; ++m) {
      const long long w = radix_weight(params.dims, static_cast<int>(m));
      auto& row = table[i][m];
      row.resize(static_cast<std::size_t>(params.dims[m]));
      for (std::size_t s = 0; s < row.size(); ++s) {
        row[s] = (static_cast<long long>(i) * static_cast<long long>(s) % params.p) * w % params.p;
      }
    }
  }
  return table;
}

bool is_formula_table(const ConstructionParams& params, const ExponentTable& table) {
  try {
    return exponent_table(params) == table;
  } catch (const InvalidParams&) {
    return false;
  }
}

std::vector<ProductVector> build_from_table(const ConstructionParams& params, const ExponentTable& table) {
  if (auto v = validate_params(params); !v.empty()) {
    throw InvalidParams(std::move(v));
  }
  if (table.size() != static_cast<std::size_t>(params.K)) {
    throw InvalidParams({"exponent table must have K rows"});
  }
  std::vector<ProductVector> out;
  out.reserve(table.size());
  for (const auto& row : table) {
    if (row.size() != params.dims.size()) {
      throw InvalidParams({"exponent table row must list every party"});
    }
    ProductVector vec;
    for (std::size_t m = 0; m < row.size(); ++m) {
      const auto d = static_cast<std::size_t>(params.dims[m]);
      if (row[m].size() != d) {
        throw InvalidParams({"exponent table party " + std::to_string(m) + " must have dims[m] levels"});
      }
      LocalFactor local;
      local.amplitudes.resize(static_cast<Eigen::Index>(d));
      for (std::size_t s = 0; s < d; ++s) {
        long long k = row[m][s] % params.p;
        if (k < 0) {
          k += params.p;
        }
        const Scale scale = params.h ? (*params.h)[m][s] : Scale{};
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / params.p;
        local.exponents.push_back(k);
        local.scales.push_back(scale);
        local.amplitudes(static_cast<Eigen::Index>(s)) = scale.value * std::polar(1.0, angle);
      }
      vec.locals.push_back(std::move(local));
    }
    out.push_back(std::move(vec));
  }
  return out;
}

std::vector<ProductVector> build_nupb(const ConstructionParams& params) {
  return build_from_table(params, exponent_table(params));
}

bool has_exact_scales(const ConstructionParams& params) {
  if (!params.h) {
    return true;
  }
  for (const auto& row : *params.h) {
    for (const auto& s : row) {
      if (!s.exact) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace gesforge
