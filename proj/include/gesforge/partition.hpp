#ifndef GESFORGE_PARTITION_HPP
#define GESFORGE_PARTITION_HPP

#include <Eigen/Core>
#include <span>
#include <utility>
#include <vector>

#include "gesforge/construct.hpp"
#include "gesforge/cyclo.hpp"

namespace gesforge {

/// A cut S | Sbar of the parties {0..n-1}; S is sorted, nonempty and proper.
struct Bipartition {
  int n = 0;
  std::vector<int> parties;

  /// Validates the subset; throws std::invalid_argument.
  static Bipartition of(int n, std::vector<int> parties);

  std::vector<int> complement() const;
  /// The same cut written with party 0 on the S side.
  Bipartition canonical() const;
  bool operator==(const Bipartition&) const = default;
};

/// The 2^(n-1) - 1 cuts whose S side contains party 0, ordered by bitmask.
std::vector<Bipartition> enumerate_bipartitions(int n);

/// j = sum_m s_m W_m with party 0 most significant. Throws on digits out of range.
long long flat_index(std::span<const int> digits, std::span<const int> dims);
std::vector<int> unflatten(long long j, std::span<const int> dims);

long long side_dimension(std::span<const int> dims, std::span<const int> parties);

/// For each local index over `parties` (mixed radix in listed order), the flat
/// index of the full basis state with every other party at level 0.
std::vector<long long> column_offsets(std::span<const int> dims, std::span<const int> parties);

/// Maps flat index j to (index over S) * D_Sbar + (index over Sbar).
std::vector<long long> bipartite_permutation(std::span<const int> dims, const Bipartition& b);

/// Coefficient matrix with rows = product vectors in the computational basis.
struct FlatMatrix {
  CycMatrix entries;
  std::vector<int> dims;
  int p = 0;
};

/// Throws std::invalid_argument when a scale factor has no exact value.
FlatMatrix assemble_M(const std::vector<ProductVector>& vectors, std::span<const int> dims, int p);
FlatMatrix assemble_M(const ConstructionParams& params);

/// Floating K x D coefficient matrix; works for any scale factors.
Eigen::MatrixXcd numeric_matrix(const std::vector<ProductVector>& vectors);
Eigen::MatrixXcd numeric_matrix(const std::vector<ProductState>& states);

/// Exact (M_S, M_Sbar): rows are the S-side and Sbar-side factors of each vector.
std::pair<CycMatrix, CycMatrix> factor_matrices(const std::vector<ProductVector>& vectors, int p,
                                                const Bipartition& b);
std::pair<CycMatrix, CycMatrix> factor_matrices(const ConstructionParams& params, const Bipartition& b);

/// Exact side factor over an arbitrary party subset.
CycMatrix side_matrix(const std::vector<ProductVector>& vectors, int p, std::span<const int> parties);

}  // namespace gesforge

#endif  // GESFORGE_PARTITION_HPP
