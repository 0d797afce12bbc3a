#ifndef GESFORGE_NUMCERT_HPP
#define GESFORGE_NUMCERT_HPP

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gesforge/construct.hpp"
#include "gesforge/partition.hpp"

namespace gesforge {

class NumericalPathology : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Orthonormal basis of the orthocomplement of the span of K product vectors.
struct GesBasis {
  Eigen::MatrixXcd columns;  // D x (D - rank)
  std::vector<int> dims;
  std::size_t rank = 0;
  bool rank_from_exact = false;
  double residual = 0.0;  // max_{i,j} |<Psi_i|b_j>|
  double orthonormality_error = 0.0;
};

/// `rows` holds the K product vectors as rows (unnormalized coefficients).
/// With `exact_rank` given, a disagreeing floating rank throws NumericalPathology.
GesBasis ges_basis(const Eigen::MatrixXcd& rows, const std::vector<int>& dims,
                   std::optional<std::size_t> exact_rank = std::nullopt);

struct OptimizerOptions {
  int restarts = 50;
  int max_iters = 500;
  double tol = 1e-12;
  double threshold = 1e-6;
  std::uint64_t seed = 20240611;
};

struct AlternatingRun {
  double value = 0.0;
  Eigen::VectorXcd a;
  Eigen::VectorXcd b;
  std::vector<double> trace;  // objective after every half-sweep
  int sweeps = 0;
  bool converged = false;
};

/**
 * One alternating run on an operator already permuted to S (x) Sbar order.
 * Each half-sweep fixes one side and takes the extreme eigenvector of the
 * reduced Hermitian operator on the other; minimizing runs are monotone
 * non-increasing, maximizing runs non-decreasing.
 */
AlternatingRun alternating_run(const Eigen::MatrixXcd& op, Eigen::Index dim_s, Eigen::Index dim_sbar,
                               Eigen::VectorXcd b0, int max_iters, double tol, bool minimize);

struct BiproductSearch {
  double value = 0.0;
  Eigen::VectorXcd a;       // unit vector on S
  Eigen::VectorXcd b;       // unit vector on Sbar
  Eigen::VectorXcd state;   // a (x) b in the flat computational basis
  int restarts = 0;
  int best_restart = 0;
  int sweeps = 0;           // sweeps of the best run
  bool converged = false;
};

/// Permutes a D x D operator into S (x) Sbar index order.
Eigen::MatrixXcd permute_operator(const Eigen::MatrixXcd& op, const std::vector<int>& dims, const Bipartition& b);

/// G = sum_i |Psi_i><Psi_i| over the normalized product vectors.
Eigen::MatrixXcd gram_operator(const std::vector<ProductState>& states);

/// Multi-start minimum of <a(x)b|G|a(x)b>; throws std::invalid_argument for non-Hermitian G.
BiproductSearch min_biproduct_value(const Eigen::MatrixXcd& G, const std::vector<int>& dims, const Bipartition& b,
                                    const OptimizerOptions& opts);

/// Multi-start maximum of <a(x)b|P|a(x)b> with P the projector onto the basis span.
BiproductSearch max_product_overlap(const GesBasis& basis, const Bipartition& b, const OptimizerOptions& opts);

struct BipartitionMinimum {
  Bipartition cut;
  BiproductSearch search;
};

struct NumericCertificate {
  std::vector<int> dims;
  std::size_t K = 0;
  OptimizerOptions opts;
  std::vector<BipartitionMinimum> bipartitions;
  bool pass = false;
};

NumericCertificate certify_ges_numeric(const std::vector<ProductState>& states, const OptimizerOptions& opts);

/// Isotropic random unit vector in the span of the basis.
Eigen::VectorXcd sample_ges_state(const GesBasis& basis, std::uint64_t seed);

/// Singular values of the state reshaped to D_S x D_Sbar, descending.
std::vector<double> schmidt_coefficients(const Eigen::VectorXcd& state, const std::vector<int>& dims,
                                         const Bipartition& b);

}  // namespace gesforge

#endif  // GESFORGE_NUMCERT_HPP
