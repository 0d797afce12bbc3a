#ifndef GESFORGE_CYCLO_HPP
#define GESFORGE_CYCLO_HPP

#include <gmpxx.h>

#include <Eigen/Core>
#include <complex>
#include <cstddef>
#include <vector>

namespace gesforge {

using Rational = mpq_class;

/// Deterministic trial-division primality test.
bool is_prime(long long x);

/**
 * Exact element of the cyclotomic field Q(w), w = exp(2 pi i / p), p prime.
 *
 * Stored in the canonical basis {1, w, ..., w^(p-2)}; the relation
 * 1 + w + ... + w^(p-1) = 0 is used to eliminate w^(p-1), so the
 * representation is unique and equality is coefficient-wise.
 *
 * A default-constructed value has order 0. It acts as an additive
 * identity of unknown order (needed for dense storage) and adopts the
 * order of the other operand in arithmetic.
 */
class CycNum {
 public:
  CycNum() = default;

  /// Zero of Q(w_p). Throws std::invalid_argument for non-prime p.
  explicit CycNum(int p);

  /// Throws unless coeffs.size() == p - 1 and p is prime.
  CycNum(int p, std::vector<Rational> coeffs);

  static CycNum root_power(long long e, int p);
  static CycNum from_rational(const Rational& r, int p);

  int order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const;
  std::complex<double> to_complex() const;

  /// Galois automorphism w -> w^t, gcd(t, p) = 1.
  CycNum galois(long long t) const;

  /// Multiplicative inverse; throws std::domain_error on zero.
  CycNum inverse() const;

  CycNum& operator+=(const CycNum& rhs);
  CycNum& operator-=(const CycNum& rhs);
  CycNum& operator*=(const CycNum& rhs);
  CycNum& operator*=(const Rational& rhs);
  CycNum operator-() const;

  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }
  friend bool operator==(const CycNum& a, const CycNum& b);
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

 private:
  struct Unchecked {};
  CycNum(Unchecked, int p);

  // Resolves the shared order of a binary operation; throws on mismatch.
  static int common_order(const CycNum& a, const CycNum& b);
  void bind(int p);

  int order_ = 0;
  std::vector<Rational> coeffs_;
};

using CycMatrix = Eigen::Matrix<CycNum, Eigen::Dynamic, Eigen::Dynamic>;

// Named entry points mirroring the operator set.
CycNum cyc_root_power(long long e, int p);
CycNum cyc_add(const CycNum& a, const CycNum& b);
CycNum cyc_mul(const CycNum& a, const CycNum& b);
CycNum cyc_neg(const CycNum& a);
bool cyc_is_zero(const CycNum& a);
std::complex<double> cyc_to_float(const CycNum& a);
Eigen::MatrixXcd cyc_to_float(const CycMatrix& m);

/// Common order of all entries; throws std::invalid_argument if mixed.
int cyc_matrix_order(const CycMatrix& m);

/// Exact determinant by Gaussian elimination over Q(w_p).
CycNum cyc_det(const CycMatrix& m);

/// Exact rank over Q(w_p).
std::size_t cyc_rank(const CycMatrix& m);

/// Rows/columns of the p x p DFT matrix [w^(ij)] selected by index lists.
CycMatrix dft_submatrix(int p, const std::vector<int>& rows, const std::vector<int>& cols);

}  // namespace gesforge

namespace Eigen {
template <>
struct NumTraits<gesforge::CycNum> : GenericNumTraits<gesforge::CycNum> {
  using Real = gesforge::CycNum;
  using NonInteger = gesforge::CycNum;
  using Literal = gesforge::CycNum;
  using Nested = gesforge::CycNum;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 20,
    AddCost = 50,
    MulCost = 500
  };
};
}  // namespace Eigen

#endif  // GESFORGE_CYCLO_HPP
