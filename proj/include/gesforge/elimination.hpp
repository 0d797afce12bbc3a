#ifndef GESFORGE_ELIMINATION_HPP
#define GESFORGE_ELIMINATION_HPP

#include <Eigen/Core>
#include <cstddef>
#include <stdexcept>
#include <utility>

#include "gesforge/cyclo.hpp"

namespace gesforge {

// Field hooks for exact scalars. Elimination pivots on the first exactly
// nonzero entry, so no ordering or magnitude is needed.
inline bool field_is_zero(const Rational& x) { return sgn(x) == 0; }
inline Rational field_inverse(const Rational& x) { return Rational(1) / x; }
inline Rational field_one_like(const Rational&) { return Rational(1); }

inline bool field_is_zero(const CycNum& x) { return x.is_zero(); }
inline CycNum field_inverse(const CycNum& x) { return x.inverse(); }
inline CycNum field_one_like(const CycNum& x) { return CycNum::root_power(0, x.order()); }

namespace detail {

// In-place row echelon form. Returns rank; tracks the determinant of the
// leading square block when the matrix is square.
template <typename Scalar>
std::size_t echelon(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a, Scalar* det) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  Eigen::Index rank = 0;
  bool negate = false;
  for (Eigen::Index c = 0; c < cols && rank < rows; ++c) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = rank; r < rows; ++r) {
      if (!field_is_zero(a(r, c))) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) {
      continue;
    }
    if (pivot != rank) {
      a.row(pivot).swap(a.row(rank));
      negate = !negate;
    }
    if (det != nullptr) {
      *det = *det * a(rank, c);
    }
    const Scalar inv = field_inverse(a(rank, c));
    for (Eigen::Index r = rank + 1; r < rows; ++r) {
      if (field_is_zero(a(r, c))) {
        continue;
      }
      const Scalar factor = a(r, c) * inv;
      for (Eigen::Index k = c; k < cols; ++k) {
        a(r, k) = a(r, k) - factor * a(rank, k);
      }
    }
    ++rank;
  }
  if (det != nullptr && negate) {
    *det = -*det;
  }
  return static_cast<std::size_t>(rank);
}

}  // namespace detail

template <typename Derived>
std::size_t exact_rank(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a = m;
  return detail::echelon<Scalar>(a, nullptr);
}

template <typename Derived>
typename Derived::Scalar exact_determinant(const Eigen::MatrixBase<Derived>& m,
                                           const typename Derived::Scalar& one) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("determinant requires a square matrix");
  }
  Scalar det = one;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a = m;
  if (detail::echelon<Scalar>(a, &det) < static_cast<std::size_t>(m.rows())) {
    return det - det;
  }
  return det;
}

}  // namespace gesforge

#endif  // GESFORGE_ELIMINATION_HPP
