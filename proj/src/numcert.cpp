#include "gesforge/numcert.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

namespace gesforge {

namespace {

std::uint32_t cut_mask(const Bipartition& b) {
  std::uint32_t mask = 0;
  for (int m : b.parties) {
    mask |= 1U << m;
  }
  return mask;
}

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint32_t salt, std::uint32_t counter) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), salt, counter};
  return std::mt19937_64(seq);
}

Eigen::VectorXcd gaussian_unit(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd v(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(k) = {re, im};
  }
  return v.normalized();
}

void require_hermitian(const Eigen::MatrixXcd& op) {
  if (op.rows() != op.cols()) {
    throw std::invalid_argument("operator must be square");
  }
  const double scale = std::max(1.0, op.norm());
  if ((op - op.adjoint()).norm() > 1e-10 * scale) {
    throw std::invalid_argument("operator must be Hermitian");
  }
}

// (I (x) b)^dag op (I (x) b) for op in S (x) Sbar order.
Eigen::MatrixXcd reduce_on_s(const Eigen::MatrixXcd& op, Eigen::Index ds, Eigen::Index dsbar, const Eigen::VectorXcd& b) {
  Eigen::MatrixXcd out(ds, ds);
  for (Eigen::Index s = 0; s < ds; ++s) {
    for (Eigen::Index t = 0; t < ds; ++t) {
      out(s, t) = b.dot(op.block(s * dsbar, t * dsbar, dsbar, dsbar) * b);
    }
  }
  return out;
}

// (a (x) I)^dag op (a (x) I).
Eigen::MatrixXcd reduce_on_sbar(const Eigen::MatrixXcd& op, Eigen::Index ds, Eigen::Index dsbar, const Eigen::VectorXcd& a) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dsbar, dsbar);
  for (Eigen::Index s = 0; s < ds; ++s) {
    for (Eigen::Index t = 0; t < ds; ++t) {
      out += std::conj(a(s)) * a(t) * op.block(s * dsbar, t * dsbar, dsbar, dsbar);
    }
  }
  return out;
}

std::pair<double, Eigen::VectorXcd> extreme_eigenpair(const Eigen::MatrixXcd& h, bool minimize) {
  const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym);
  const Eigen::Index k = minimize ? 0 : sym.rows() - 1;
  return {es.eigenvalues()(k), es.eigenvectors().col(k)};
}

BiproductSearch multistart(const Eigen::MatrixXcd& permuted, const std::vector<int>& dims, const Bipartition& cut,
                           const OptimizerOptions& opts, bool minimize) {
  const auto sbar = cut.complement();
  const Eigen::Index ds = side_dimension(dims, cut.parties);
  const Eigen::Index dsbar = side_dimension(dims, sbar);
  BiproductSearch best;
  best.value = minimize ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  const int restarts = std::max(1, opts.restarts);
  for (int r = 0; r < restarts; ++r) {
    auto rng = stream_rng(opts.seed, cut_mask(cut) | (minimize ? 0U : 0x80000000U), static_cast<std::uint32_t>(r));
    auto run = alternating_run(permuted, ds, dsbar, gaussian_unit(dsbar, rng), opts.max_iters, opts.tol, minimize);
    if (minimize ? run.value < best.value : run.value > best.value) {
      best.value = run.value;
      best.a = run.a;
      best.b = run.b;
      best.best_restart = r;
      best.sweeps = run.sweeps;
      best.converged = run.converged;
    }
  }
  best.restarts = restarts;
  // Re-evaluate on the flat state and map back to the computational basis.
  const Eigen::VectorXcd x = Eigen::kroneckerProduct(best.a, best.b).eval();
  best.value = std::max(0.0, std::real(x.dot(permuted * x)));
  const auto perm = bipartite_permutation(dims, cut);
  best.state.resize(x.size());
  for (std::size_t j = 0; j < perm.size(); ++j) {
    best.state(static_cast<Eigen::Index>(j)) = x(perm[j]);
  }
  return best;
}

}  // namespace

GesBasis ges_basis(const Eigen::MatrixXcd& rows, const std::vector<int>& dims, std::optional<std::size_t> exact_rank) {
  const Eigen::Index D = rows.cols();
  if (D != total_dimension(dims)) {
    throw std::invalid_argument("coefficient matrix width does not match dims");
  }
  // Orthocomplement of the span = null space of the row functionals <Psi_i|.
  const Eigen::MatrixXcd functionals = rows.conjugate();
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(functionals, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? sv(0) * 1e-9 * static_cast<double>(std::max(rows.rows(), D)) : 0.0;
  std::size_t floating_rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > cutoff) {
      ++floating_rank;
    }
  }
  GesBasis basis;
  basis.dims = dims;
  if (exact_rank) {
    if (*exact_rank != floating_rank) {
      throw NumericalPathology("floating rank " + std::to_string(floating_rank) + " disagrees with exact rank " +
                               std::to_string(*exact_rank));
    }
    basis.rank_from_exact = true;
  }
  basis.rank = floating_rank;
  const Eigen::Index nullity = D - static_cast<Eigen::Index>(floating_rank);
  basis.columns = svd.matrixV().rightCols(nullity);
  basis.residual = nullity > 0 && rows.rows() > 0 ? (functionals * basis.columns).cwiseAbs().maxCoeff() : 0.0;
  basis.orthonormality_error =
      nullity > 0 ? (basis.columns.adjoint() * basis.columns - Eigen::MatrixXcd::Identity(nullity, nullity))
                        .cwiseAbs()
                        .maxCoeff()
                  : 0.0;
  return basis;
}

AlternatingRun alternating_run(const Eigen::MatrixXcd& op, Eigen::Index dim_s, Eigen::Index dim_sbar,
                               Eigen::VectorXcd b0, int max_iters, double tol, bool minimize) {
  AlternatingRun run;
  run.b = b0.normalized();
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (int sweep = 0; sweep < max_iters; ++sweep) {
    auto [va, a] = extreme_eigenpair(reduce_on_s(op, dim_s, dim_sbar, run.b), minimize);
    run.a = a;
    run.trace.push_back(va);
    auto [vb, b] = extreme_eigenpair(reduce_on_sbar(op, dim_s, dim_sbar, run.a), minimize);
    run.b = b;
    run.trace.push_back(vb);
    run.value = vb;
    run.sweeps = sweep + 1;
    if (!std::isnan(previous) && std::abs(previous - vb) < tol) {
      run.converged = true;
      break;
    }
    previous = vb;
  }
  return run;
}

Eigen::MatrixXcd permute_operator(const Eigen::MatrixXcd& op, const std::vector<int>& dims, const Bipartition& b) {
  const auto perm = bipartite_permutation(dims, b);
  const auto D = static_cast<Eigen::Index>(perm.size());
  if (op.rows() != D || op.cols() != D) {
    throw std::invalid_argument("operator size does not match dims");
  }
  Eigen::MatrixXcd out(D, D);
  for (Eigen::Index j = 0; j < D; ++j) {
    for (Eigen::Index k = 0; k < D; ++k) {
      out(perm[static_cast<std::size_t>(j)], perm[static_cast<std::size_t>(k)]) = op(j, k);
    }
  }
  return out;
}

Eigen::MatrixXcd gram_operator(const std::vector<ProductState>& states) {
  const Eigen::MatrixXcd rows = numeric_matrix(states);
  const Eigen::MatrixXcd normalized = rows.rowwise().normalized();
  // sum_i |psi_i><psi_i| with |psi_i> = row i transposed.
  return normalized.transpose() * normalized.conjugate();
}

BiproductSearch min_biproduct_value(const Eigen::MatrixXcd& G, const std::vector<int>& dims, const Bipartition& b,
                                    const OptimizerOptions& opts) {
  require_hermitian(G);
  return multistart(permute_operator(G, dims, b), dims, b, opts, true);
}

BiproductSearch max_product_overlap(const GesBasis& basis, const Bipartition& b, const OptimizerOptions& opts) {
  const Eigen::MatrixXcd projector = basis.columns * basis.columns.adjoint();
  return multistart(permute_operator(projector, basis.dims, b), basis.dims, b, opts, false);
}

NumericCertificate certify_ges_numeric(const std::vector<ProductState>& states, const OptimizerOptions& opts) {
  if (states.empty()) {
    throw std::invalid_argument("no product vectors to certify");
  }
  NumericCertificate cert;
  for (const auto& l : states.front()) {
    cert.dims.push_back(static_cast<int>(l.size()));
  }
  cert.K = states.size();
  cert.opts = opts;
  const Eigen::MatrixXcd G = gram_operator(states);
  cert.pass = true;
  for (const auto& cut : enumerate_bipartitions(static_cast<int>(cert.dims.size()))) {
    auto search = min_biproduct_value(G, cert.dims, cut, opts);
    cert.pass = cert.pass && search.value > opts.threshold;
    cert.bipartitions.push_back({cut, std::move(search)});
  }
  return cert;
}

Eigen::VectorXcd sample_ges_state(const GesBasis& basis, std::uint64_t seed) {
  auto rng = stream_rng(seed, 0x5eed5eedU, 0);
  const Eigen::VectorXcd c = gaussian_unit(basis.columns.cols(), rng);
  return (basis.columns * c).normalized();
}

std::vector<double> schmidt_coefficients(const Eigen::VectorXcd& state, const std::vector<int>& dims,
                                         const Bipartition& b) {
  const auto perm = bipartite_permutation(dims, b);
  if (static_cast<Eigen::Index>(perm.size()) != state.size()) {
    throw std::invalid_argument("state size does not match dims");
  }
  const Eigen::Index ds = side_dimension(dims, b.parties);
  const Eigen::Index dsbar = state.size() / ds;
  Eigen::MatrixXcd reshaped(ds, dsbar);
  for (std::size_t j = 0; j < perm.size(); ++j) {
    const long long u = perm[j];
    reshaped(u / dsbar, u % dsbar) = state(static_cast<Eigen::Index>(j));
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(reshaped);
  const auto& sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

}  // namespace gesforge
