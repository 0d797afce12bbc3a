#include <doctest.h>

#include <random>

#include "gesforge/construct.hpp"
#include "gesforge/exactverify.hpp"
#include "gesforge/numcert.hpp"
#include "oracles.hpp"

using namespace gesforge;

namespace {

std::vector<ProductState> states_of(const ConstructionParams& params) {
  std::vector<ProductState> out;
  for (const auto& v : build_nupb(params)) {
    out.push_back(v.state());
  }
  return out;
}

ProductState basis_product(const std::vector<int>& dims, const std::vector<int>& levels) {
  ProductState s;
  for (std::size_t m = 0; m < dims.size(); ++m) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dims[m]);
    e(levels[m]) = 1.0;
    s.push_back(e);
  }
  return s;
}

Eigen::VectorXcd random_state(Eigen::Index n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    v(k) = {g(rng), g(rng)};
  }
  return v.normalized();
}

GesBasis span_of(const Eigen::MatrixXcd& cols, const std::vector<int>& dims) {
  GesBasis b;
  b.dims = dims;
  b.columns = Eigen::HouseholderQR<Eigen::MatrixXcd>(cols).householderQ() *
              Eigen::MatrixXcd::Identity(cols.rows(), cols.cols());
  return b;
}

}  // namespace

TEST_CASE("GES basis of the three-qubit example") {
  const auto params = ConstructionParams::homogeneous(3, 2, 5, 11);
  const auto vectors = build_nupb(params);
  const Eigen::MatrixXcd rows = numeric_matrix(vectors);
  const auto basis = ges_basis(rows, params.dims, 5);
  CHECK(basis.rank == 5);
  CHECK(basis.rank_from_exact);
  CHECK(basis.columns.cols() == 3);
  CHECK(basis.residual < 1e-12);
  CHECK(basis.orthonormality_error < 1e-12);
  // Independent residual: <Psi_i|b_j> with the adjoint inner product.
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index j = 0; j < basis.columns.cols(); ++j) {
      CHECK(std::abs(rows.row(i).transpose().dot(basis.columns.col(j))) < 1e-12);
    }
  }
  CHECK_THROWS_AS(ges_basis(rows, params.dims, 4), NumericalPathology);
  CHECK_THROWS_AS(ges_basis(rows, {2, 2}, std::nullopt), std::invalid_argument);
}

TEST_CASE("GES basis with rank deficiency") {
  Eigen::MatrixXcd rows = numeric_matrix(states_of(ConstructionParams::homogeneous(3, 2, 5, 11)));
  rows.row(4) = rows.row(1);
  const auto basis = ges_basis(rows, {2, 2, 2});
  CHECK(basis.rank == 4);
  CHECK(basis.columns.cols() == 4);
  CHECK_FALSE(basis.rank_from_exact);
}

TEST_CASE("non-Hermitian operators are rejected") {
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Identity(4, 4);
  G(0, 1) = 1.0;
  CHECK_THROWS_AS(min_biproduct_value(G, {2, 2}, Bipartition::of(2, {0}), {}), std::invalid_argument);
}

TEST_CASE("identity operator has unit biproduct value") {
  std::vector<ProductState> states;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      states.push_back(basis_product({2, 2}, {a, b}));
    }
  }
  const Eigen::MatrixXcd G = gram_operator(states);
  CHECK((G - Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-14);
  OptimizerOptions opts;
  opts.restarts = 5;
  CHECK(min_biproduct_value(G, {2, 2}, Bipartition::of(2, {0}), opts).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("positive and negative controls") {
  OptimizerOptions opts;
  const auto positive = certify_ges_numeric(states_of(ConstructionParams::homogeneous(3, 2, 5, 11)), opts);
  CHECK(positive.pass);
  REQUIRE(positive.bipartitions.size() == 3);
  for (const auto& b : positive.bipartitions) {
    CHECK(b.search.value > 1e-6);
    CHECK(b.search.converged);
  }

  // Orthocomplement spanned by |11>: a product vector, so the minimum is zero.
  std::vector<ProductState> negative{basis_product({2, 2}, {0, 0}), basis_product({2, 2}, {0, 1}),
                                     basis_product({2, 2}, {1, 0})};
  const auto cert = certify_ges_numeric(negative, opts);
  CHECK_FALSE(cert.pass);
  CHECK(cert.bipartitions.front().search.value < 1e-12);
  const auto& x = cert.bipartitions.front().search.state;
  CHECK(std::abs(x(3)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("four qubits with K = 9: the S = {0} minimum lies below the default threshold") {
  const auto params = ConstructionParams::homogeneous(4, 2, 9, 17);
  REQUIRE(verify_all_bipartitions(params).pass());
  const auto cert = certify_ges_numeric(states_of(params), OptimizerOptions{});
  REQUIRE(cert.bipartitions.size() == 7);
  int passing = 0;
  for (const auto& b : cert.bipartitions) {
    CHECK(b.search.value > 0.0);
    passing += b.search.value > 1e-6 ? 1 : 0;
  }
  CHECK(passing == 6);
  CHECK(cert.bipartitions.front().cut.parties == std::vector<int>{0});
  CHECK(cert.bipartitions.front().search.value < 1e-6);
  CHECK(cert.bipartitions.front().search.value > 1e-9);
  CHECK_FALSE(cert.pass);
}

TEST_CASE("alternating runs are monotone") {
  const auto G = gram_operator(states_of(ConstructionParams::homogeneous(3, 3, 11, 29)));
  const std::vector<int> dims{3, 3, 3};
  for (const auto& cut : enumerate_bipartitions(3)) {
    const auto op = permute_operator(G, dims, cut);
    const auto ds = side_dimension(dims, cut.parties);
    for (unsigned seed = 1; seed <= 3; ++seed) {
      const auto down = alternating_run(op, ds, 27 / ds, random_state(27 / ds, seed), 200, 1e-13, true);
      for (std::size_t k = 1; k < down.trace.size(); ++k) {
        CHECK(down.trace[k] <= down.trace[k - 1] + 1e-12);
      }
      const auto up = alternating_run(op, ds, 27 / ds, random_state(27 / ds, seed), 200, 1e-13, false);
      for (std::size_t k = 1; k < up.trace.size(); ++k) {
        CHECK(up.trace[k] >= up.trace[k - 1] - 1e-12);
      }
    }
  }
}

TEST_CASE("results are reproducible for a fixed seed") {
  const auto states = states_of(ConstructionParams::homogeneous(3, 2, 6, 11));
  OptimizerOptions opts;
  opts.restarts = 10;
  const auto a = certify_ges_numeric(states, opts);
  const auto b = certify_ges_numeric(states, opts);
  for (std::size_t k = 0; k < a.bipartitions.size(); ++k) {
    CHECK(a.bipartitions[k].search.value == b.bipartitions[k].search.value);
    CHECK((a.bipartitions[k].search.state == b.bipartitions[k].search.state));
    CHECK(a.bipartitions[k].search.best_restart == b.bipartitions[k].search.best_restart);
  }
}

TEST_CASE("two-qubit minimum agrees with a Bloch-sphere grid search") {
  const auto G = gram_operator(states_of(ConstructionParams::homogeneous(2, 2, 3, 5)));
  const auto search = min_biproduct_value(G, {2, 2}, Bipartition::of(2, {0}), OptimizerOptions{});
  const double grid = oracle::grid_min_two_qubit(G);
  CHECK(search.value <= grid + 1e-9);
  CHECK(search.value == doctest::Approx(grid).epsilon(1e-6));
  CHECK(search.value > 1e-6);

  // The reported argmin is a unit product state with the reported value.
  CHECK(search.state.norm() == doctest::Approx(1.0));
  CHECK(std::real(search.state.dot(G * search.state)) == doctest::Approx(search.value).epsilon(1e-9));
}

TEST_CASE("Schmidt coefficients agree with the reduced density matrix") {
  for (const auto& dims : std::vector<std::vector<int>>{{2, 2, 2}, {2, 3, 2}, {3, 3}}) {
    const auto D = total_dimension(dims);
    const auto psi = random_state(D, static_cast<unsigned>(D));
    for (const auto& cut : enumerate_bipartitions(static_cast<int>(dims.size()))) {
      const auto sbar = cut.complement();
      std::vector<int> ds_list, dsbar_list;
      for (int m : cut.parties) {
        ds_list.push_back(dims[static_cast<std::size_t>(m)]);
      }
      for (int m : sbar) {
        dsbar_list.push_back(dims[static_cast<std::size_t>(m)]);
      }
      const auto ds = side_dimension(dims, cut.parties);
      Eigen::MatrixXcd X(ds, D / ds);
      for (long long j = 0; j < D; ++j) {
        long long rest = j;
        std::vector<int> digits(dims.size());
        for (std::size_t m = dims.size(); m-- > 0;) {
          digits[m] = static_cast<int>(rest % dims[m]);
          rest /= dims[m];
        }
        long long r = 0;
        long long c = 0;
        for (int m : cut.parties) {
          r = r * dims[static_cast<std::size_t>(m)] + digits[static_cast<std::size_t>(m)];
        }
        for (int m : sbar) {
          c = c * dims[static_cast<std::size_t>(m)] + digits[static_cast<std::size_t>(m)];
        }
        X(r, c) = psi(j);
      }
      const auto expected = oracle::schmidt_via_density(X);
      const auto got = schmidt_coefficients(psi, dims, cut);
      REQUIRE(got.size() <= expected.size());
      double sq = 0.0;
      for (std::size_t k = 0; k < got.size(); ++k) {
        CHECK(got[k] == doctest::Approx(expected[k]).epsilon(1e-9));
        sq += got[k] * got[k];
      }
      CHECK(sq == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("product overlap examples") {
  OptimizerOptions opts;
  opts.restarts = 10;
  Eigen::MatrixXcd ghz = Eigen::MatrixXcd::Zero(8, 1);
  ghz(0, 0) = ghz(7, 0) = 1.0 / std::sqrt(2.0);
  const auto ghz_basis = span_of(ghz, {2, 2, 2});
  for (const auto& cut : enumerate_bipartitions(3)) {
    CHECK(max_product_overlap(ghz_basis, cut, opts).value == doctest::Approx(0.5).epsilon(1e-9));
  }

  Eigen::MatrixXcd with_product = Eigen::MatrixXcd::Zero(8, 2);
  with_product(0, 0) = 1.0;
  with_product(3, 1) = with_product(5, 1) = 1.0;
  const auto product_basis = span_of(with_product, {2, 2, 2});
  CHECK(max_product_overlap(product_basis, Bipartition::of(3, {0}), opts).value ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("minimum of G and maximal overlap with the orthocomplement bound each other") {
  for (const auto& [n, d, K, p] : std::vector<std::array<int, 4>>{{3, 2, 5, 11}, {3, 2, 6, 11}, {2, 3, 5, 11}}) {
    const auto params = ConstructionParams::homogeneous(n, d, K, p);
    const auto states = states_of(params);
    const Eigen::MatrixXcd G = gram_operator(states);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
    const auto& ev = es.eigenvalues();
    const double lmax = ev(ev.size() - 1);
    const double lmin_pos = ev(ev.size() - K);
    const auto basis = ges_basis(numeric_matrix(build_nupb(params)), params.dims, K);
    for (const auto& cut : enumerate_bipartitions(n)) {
      const double gmin = min_biproduct_value(G, params.dims, cut, OptimizerOptions{}).value;
      const double gap = 1.0 - max_product_overlap(basis, cut, OptimizerOptions{}).value;
      CHECK(lmin_pos * gap <= gmin + 1e-9);
      CHECK(gmin <= lmax * gap + 1e-9);
      CHECK(gap > 1e-6);
    }
  }
}

TEST_CASE("a product vector in the orthocomplement drives both diagnostics to their limits") {
  const std::vector<int> dims{2, 2};
  std::vector<ProductState> states{basis_product(dims, {0, 0}), basis_product(dims, {0, 1}),
                                   basis_product(dims, {1, 0})};
  const auto basis = ges_basis(numeric_matrix(states), dims, 3);
  const auto cut = Bipartition::of(2, {0});
  CHECK(min_biproduct_value(gram_operator(states), dims, cut, OptimizerOptions{}).value < 1e-12);
  CHECK(max_product_overlap(basis, cut, OptimizerOptions{}).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sampled GES states lie in the orthocomplement") {
  const auto params = ConstructionParams::homogeneous(3, 2, 5, 11);
  const Eigen::MatrixXcd rows = numeric_matrix(build_nupb(params));
  const auto basis = ges_basis(rows, params.dims, 5);
  const auto psi = sample_ges_state(basis, 42);
  CHECK(psi.norm() == doctest::Approx(1.0));
  CHECK((rows.conjugate() * psi).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((psi == sample_ges_state(basis, 42)));
  for (const auto& cut : enumerate_bipartitions(3)) {
    const auto sc = schmidt_coefficients(psi, params.dims, cut);
    CHECK(sc.size() == 2);
    CHECK(sc[1] > 1e-6);
  }
}
