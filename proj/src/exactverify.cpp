#include "gesforge/exactverify.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "gesforge/composite.hpp"
#include "gesforge/elimination.hpp"
#include "gesforge/modular.hpp"

namespace gesforge {

namespace {

// Images under the first few admissible moduli, skipping any modulus that
// divides a denominator.
struct Screens {
  std::vector<std::pair<ModularImage, ModMatrix>> images;
};

Screens make_screens(const CycMatrix& m, int p, int wanted) {
  Screens s;
  for (int skip = 0; skip < wanted + 4 && static_cast<int>(s.images.size()) < wanted; ++skip) {
    ModularImage f(p, skip);
    if (auto mapped = f.map(m)) {
      s.images.emplace_back(std::move(f), std::move(*mapped));
    }
  }
  return s;
}

ModMatrix select_rows(const ModMatrix& a, std::span<const int> rows) {
  ModMatrix out(static_cast<Eigen::Index>(rows.size()), a.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out.row(static_cast<Eigen::Index>(k)) = a.row(rows[k]);
  }
  return out;
}

CycMatrix select_rows(const CycMatrix& a, std::span<const int> rows) {
  CycMatrix out(static_cast<Eigen::Index>(rows.size()), a.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out.row(static_cast<Eigen::Index>(k)) = a.row(rows[k]);
  }
  return out;
}

bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[static_cast<std::size_t>(i)] < n - k + i) {
      ++c[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) {
        c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
      }
      return true;
    }
  }
  return false;
}

}  // namespace

SpanningResult spanning_property(const CycMatrix& m) {
  const auto K = static_cast<int>(m.rows());
  const auto width = static_cast<int>(m.cols());
  if (K < width) {
    throw std::invalid_argument("spanning check needs at least as many rows (" + std::to_string(K) +
                                ") as columns (" + std::to_string(width) + ")");
  }
  SpanningResult result;
  const int p = cyc_matrix_order(m);
  auto record_subset = [&](std::span<const int> subset) {
    ++result.exact_checks;
    if (exact_rank(select_rows(m, subset)) < static_cast<std::size_t>(width)) {
      if (!result.witness) {
        result.witness = std::vector<int>(subset.begin(), subset.end());
      }
      ++result.failures;
    }
  };
  const Screens screens = p == 0 ? Screens{} : make_screens(m, p, 2);
  if (screens.images.empty()) {
    // No usable modulus (or an all-zero matrix): plain exact enumeration.
    std::vector<int> subset(static_cast<std::size_t>(width));
    std::iota(subset.begin(), subset.end(), 0);
    do {
      ++result.subsets_checked;
      record_subset(subset);
    } while (next_combination(subset, K));
  } else {
    const auto& [first, first_image] = screens.images.front();
    result.subsets_checked = scan_dependent_row_subsets(first_image, first, [&](std::span<const int> subset) {
      for (std::size_t k = 1; k < screens.images.size(); ++k) {
        const auto& [f, image] = screens.images[k];
        if (rank_mod(select_rows(image, subset), f) == static_cast<std::size_t>(width)) {
          return;
        }
      }
      record_subset(subset);
    });
  }
  result.holds = result.failures == 0;
  return result;
}

std::size_t certified_rank(const CycMatrix& m) {
  const int p = cyc_matrix_order(m);
  const auto full = static_cast<std::size_t>(std::min(m.rows(), m.cols()));
  if (p != 0) {
    const Screens screens = make_screens(m, p, 1);
    if (!screens.images.empty()) {
      const auto& [f, image] = screens.images.front();
      if (rank_mod(image, f) == full) {
        return full;
      }
    }
  }
  return cyc_rank(m);
}

bool rank_full(const FlatMatrix& M, int K) {
  return M.entries.rows() == K && certified_rank(M.entries) == static_cast<std::size_t>(K);
}

bool ExactReport::pass() const {
  if (!exact_available || !rank_full) {
    return false;
  }
  return std::all_of(bipartitions.begin(), bipartitions.end(), [](const auto& b) { return b.pass(); });
}

std::string ExactReport::status() const {
  if (!exact_available) {
    return "skipped";
  }
  return pass() ? "certified" : "failed";
}

ExactReport verify_vectors(const std::vector<ProductVector>& vectors, const std::vector<int>& dims, int p) {
  ExactReport report;
  report.p = p;
  report.K = static_cast<int>(vectors.size());
  report.dims = dims;
  for (const auto& v : vectors) {
    for (const auto& l : v.locals) {
      for (const auto& s : l.scales) {
        if (!s.exact) {
          report.exact_available = false;
        }
      }
    }
  }
  if (!report.exact_available) {
    report.skip_reason = "scale factors without exact rational values; numeric certification only";
    return report;
  }
  const FlatMatrix M = assemble_M(vectors, dims, p);
  report.rank_of_M = certified_rank(M.entries);
  report.rank_full = report.rank_of_M == static_cast<std::size_t>(report.K);

  for (const auto& cut : enumerate_bipartitions(static_cast<int>(dims.size()))) {
    BipartitionVerdict verdict;
    verdict.cut = cut;
    const auto sbar = cut.complement();
    verdict.dim_s = side_dimension(dims, cut.parties);
    verdict.dim_sbar = side_dimension(dims, sbar);
    verdict.count_ok = report.K >= verdict.dim_s + verdict.dim_sbar - 1;
    auto [ms, msbar] = factor_matrices(vectors, p, cut);
    auto check = [&](const CycMatrix& side, SpanningResult& out, const char* label) {
      try {
        out = spanning_property(side);
      } catch (const std::invalid_argument& e) {
        out = SpanningResult{};
        verdict.note += std::string(label) + ": " + e.what() + ". ";
      }
    };
    check(ms, verdict.spanning_s, "S");
    check(msbar, verdict.spanning_sbar, "Sbar");
    report.bipartitions.push_back(std::move(verdict));
  }
  return report;
}

ExactReport verify_all_bipartitions(const ConstructionParams& params) {
  return verify_vectors(build_nupb(params), params.dims, params.p);
}

ChebotarevScan chebotarev_scan(int p, int max_size) {
  if (p < 2) {
    throw std::invalid_argument("DFT order must be at least 2");
  }
  ChebotarevScan scan;
  scan.p = p;
  scan.max_size = std::clamp(max_size, 0, p);
  const ModularImage first(p, 0);
  const ModularImage second(p, 1);
  for (int k = 1; k <= scan.max_size; ++k) {
    std::vector<int> rows(static_cast<std::size_t>(k));
    std::iota(rows.begin(), rows.end(), 0);
    do {
      // Columns of DFT[rows, :] as rows of a p x k matrix; a dependent
      // k-subset of them is exactly a vanishing k x k minor.
      ModMatrix cols_first(p, k);
      ModMatrix cols_second(p, k);
      for (int c = 0; c < p; ++c) {
        for (int r = 0; r < k; ++r) {
          const long long e = static_cast<long long>(rows[static_cast<std::size_t>(r)]) * c;
          cols_first(c, r) = first.root_power(e);
          cols_second(c, r) = second.root_power(e);
        }
      }
      scan.minors_checked += scan_dependent_row_subsets(cols_first, first, [&](std::span<const int> cols) {
        if (rank_mod(select_rows(cols_second, cols), second) == static_cast<std::size_t>(k)) {
          return;
        }
        std::vector<int> c(cols.begin(), cols.end());
        if (dft_minor_vanishes(p, rows, c)) {
          scan.witnesses.push_back({rows, std::move(c)});
        }
      });
    } while (next_combination(rows, p));
  }
  return scan;
}

}  // namespace gesforge
