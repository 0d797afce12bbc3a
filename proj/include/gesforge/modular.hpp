#ifndef GESFORGE_MODULAR_HPP
#define GESFORGE_MODULAR_HPP

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gesforge/cyclo.hpp"

namespace gesforge {

using ModMatrix = Eigen::Matrix<std::uint64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/**
 * Ring homomorphism Z[w_N] -> F_q sending w to a primitive N-th root of
 * unity g, where q is a prime with q = 1 (mod N). N need not be prime.
 *
 * If the image of an element is nonzero, the element itself is nonzero.
 * The converse fails only with probability about deg/q, so a vanishing
 * image must be confirmed in exact arithmetic.
 */
class ModularImage {
 public:
  /// `skip` selects the skip-th admissible prime above 2^30.
  explicit ModularImage(int order, int skip = 0);

  int order() const { return order_; }
  std::uint64_t modulus() const { return q_; }
  std::uint64_t root() const { return g_; }

  std::uint64_t root_power(long long e) const;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % q_; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + q_ - b) % q_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % q_; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;

  /// Empty when a denominator vanishes mod q.
  std::optional<std::uint64_t> map(const Rational& r) const;
  std::optional<std::uint64_t> map(const CycNum& x) const;
  std::optional<ModMatrix> map(const CycMatrix& m) const;

 private:
  int order_;
  std::uint64_t q_ = 0;
  std::uint64_t g_ = 0;
  std::vector<std::uint64_t> powers_;
};

std::size_t rank_mod(ModMatrix a, const ModularImage& field);

/**
 * Visits every c-subset of the rows of `a` (c = a.cols()) in lexicographic
 * order and reports those whose rows are linearly dependent over F_q.
 * Prefixes are eliminated incrementally, so each leaf costs O(c^2).
 * Returns the number of subsets visited.
 */
std::size_t scan_dependent_row_subsets(const ModMatrix& a, const ModularImage& field,
                                       const std::function<void(std::span<const int>)>& on_dependent);

}  // namespace gesforge

#endif  // GESFORGE_MODULAR_HPP
