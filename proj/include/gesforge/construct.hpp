#ifndef GESFORGE_CONSTRUCT_HPP
#define GESFORGE_CONSTRUCT_HPP

#include <Eigen/Core>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gesforge/cyclo.hpp"

namespace gesforge {

/// Per-level scale factor. Exact when it is a real rational; floating otherwise.
struct Scale {
  std::complex<double> value{1.0, 0.0};
  std::optional<Rational> exact = Rational(1);

  static Scale rational(const Rational& r);
  static Scale floating(std::complex<double> v);
  bool is_zero() const;
};

using ScaleTable = std::vector<std::vector<Scale>>;  // [party][level]

struct ConstructionParams {
  int n = 0;
  std::vector<int> dims;
  int K = 0;
  int p = 0;  // 0 selects the smallest prime >= prod(dims)
  std::optional<ScaleTable> h;

  static ConstructionParams homogeneous(int n, int d, int K, int p = 0);
  bool is_homogeneous() const;
};

/// [vector i][party m][level s], reduced mod p.
using ExponentTable = std::vector<std::vector<std::vector<long long>>>;

/// Local amplitude lists, party 0 first.
using ProductState = std::vector<Eigen::VectorXcd>;

struct LocalFactor {
  std::vector<long long> exponents;
  std::vector<Scale> scales;
  Eigen::VectorXcd amplitudes;
};

struct ProductVector {
  std::vector<LocalFactor> locals;

  ProductState state() const;
  /// Kronecker product of the locals, party 0 most significant.
  Eigen::VectorXcd full() const;
};

class InvalidParams : public std::invalid_argument {
 public:
  explicit InvalidParams(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

long long smallest_prime_geq(long long x);

long long total_dimension(const std::vector<int>& dims);

/// Mixed-radix weight of party m: product of dims[m'] for m' > m.
long long radix_weight(const std::vector<int>& dims, int m);

/// max over bipartitions of D_S + D_Sbar - 1; d^(n-1) + d - 1 when homogeneous.
long long min_member_count(const std::vector<int>& dims);

/// Largest GES dimension, D - min_member_count; (d^(n-1) - 1)(d - 1) when homogeneous.
long long max_ges_dimension(const std::vector<int>& dims);

/// Copy of params with p resolved to the default prime when unset.
ConstructionParams with_default_prime(ConstructionParams params);

/// All violated invariants, empty when params are valid.
std::vector<std::string> validate_params(const ConstructionParams& params);

/// k[i][m][s] = i * s * W_m mod p. Throws InvalidParams.
ExponentTable exponent_table(const ConstructionParams& params);

bool is_formula_table(const ConstructionParams& params, const ExponentTable& table);

std::vector<ProductVector> build_nupb(const ConstructionParams& params);

/// Same as build_nupb but with a caller-supplied exponent table.
std::vector<ProductVector> build_from_table(const ConstructionParams& params, const ExponentTable& table);

/// True when every scale factor has an exact rational value.
bool has_exact_scales(const ConstructionParams& params);

}  // namespace gesforge

#endif  // GESFORGE_CONSTRUCT_HPP
