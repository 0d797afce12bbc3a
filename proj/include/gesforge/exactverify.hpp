#ifndef GESFORGE_EXACTVERIFY_HPP
#define GESFORGE_EXACTVERIFY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gesforge/construct.hpp"
#include "gesforge/cyclo.hpp"
#include "gesforge/partition.hpp"

namespace gesforge {

/**
 * Outcome of the exhaustive spanning check on a K x D_X factor matrix:
 * every D_X-subset of rows must have rank D_X over Q(w_p).
 *
 * Subsets are first screened over two finite fields; a nonzero image there
 * certifies independence. Anything that vanishes under both images is
 * settled by exact elimination.
 */
struct SpanningResult {
  bool holds = false;
  std::size_t subsets_checked = 0;
  std::size_t failures = 0;
  std::size_t exact_checks = 0;
  std::optional<std::vector<int>> witness;  // lexicographically first dependent subset
};

/// Throws std::invalid_argument when K < D_X.
SpanningResult spanning_property(const CycMatrix& m);

/// Exact rank over Q(w_p) with a modular fast path for full row rank.
std::size_t certified_rank(const CycMatrix& m);

bool rank_full(const FlatMatrix& M, int K);

struct BipartitionVerdict {
  Bipartition cut;
  long long dim_s = 0;
  long long dim_sbar = 0;
  bool count_ok = false;  // K >= D_S + D_Sbar - 1
  SpanningResult spanning_s;
  SpanningResult spanning_sbar;
  std::string note;

  bool pass() const { return count_ok && spanning_s.holds && spanning_sbar.holds; }
};

struct MinorWitness {
  std::vector<int> rows;
  std::vector<int> cols;
};

struct ChebotarevScan {
  int p = 0;
  int max_size = 0;
  std::size_t minors_checked = 0;
  std::vector<MinorWitness> witnesses;
};

struct ExactReport {
  int p = 0;
  int K = 0;
  std::vector<int> dims;
  bool exact_available = true;
  std::string skip_reason;
  std::size_t rank_of_M = 0;
  bool rank_full = false;
  std::vector<BipartitionVerdict> bipartitions;
  std::vector<ChebotarevScan> chebotarev;

  bool pass() const;
  /// "certified", "failed" or "skipped".
  std::string status() const;
};

/// Runs the rank and spanning checks on every canonical bipartition.
ExactReport verify_vectors(const std::vector<ProductVector>& vectors, const std::vector<int>& dims, int p);
ExactReport verify_all_bipartitions(const ConstructionParams& params);

/// All vanishing square minors of the p x p DFT matrix up to max_size (clamped to p).
ChebotarevScan chebotarev_scan(int p, int max_size);

}  // namespace gesforge

#endif  // GESFORGE_EXACTVERIFY_HPP
