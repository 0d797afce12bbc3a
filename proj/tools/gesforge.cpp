// gesforge: build nonorthogonal UPBs from prime-order DFT matrices and certify
// that their orthocomplements are genuinely entangled subspaces.
//
// Exit codes: 0 certified, 1 certification failed, 2 invalid input.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gesforge/construct.hpp"
#include "gesforge/exactverify.hpp"
#include "gesforge/io.hpp"
#include "gesforge/numcert.hpp"
#include "gesforge/partition.hpp"

namespace {

using gesforge::io::json;

constexpr int kCertified = 0;
constexpr int kFailed = 1;
constexpr int kInvalid = 2;

struct RunConfig {
  std::string command;
  int n = 0;
  int d = 0;
  std::vector<int> dims;
  int K = 0;
  int p = 0;
  std::string h_file;
  std::string in;
  std::string out;
  gesforge::OptimizerOptions opts;
  std::optional<std::uint64_t> seed_flag;
  std::string seed_source = "default";
  int max_size = -1;

  json to_json() const {
    json j;
    j["command"] = command;
    if (!in.empty()) {
      j["in"] = in;
    } else {
      j["params"] = {{"n", n}, {"dims", dims}, {"K", K}, {"p", p}};
    }
    j["h_file"] = h_file.empty() ? json(nullptr) : json(h_file);
    j["opts"] = {{"restarts", opts.restarts},
                 {"max_iters", opts.max_iters},
                 {"tol", opts.tol},
                 {"threshold", opts.threshold},
                 {"seed", std::to_string(opts.seed)},
                 {"seed_source", seed_source}};
    j["max_size"] = max_size;
    j["out"] = out.empty() ? json(nullptr) : json(out);
    return j;
  }
};

void resolve_seed(RunConfig& cfg) {
  if (cfg.seed_flag) {
    cfg.opts.seed = *cfg.seed_flag;
    cfg.seed_source = "flag";
  } else if (const char* env = std::getenv("GESFORGE_SEED"); env != nullptr && *env != '\0') {
    try {
      cfg.opts.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw gesforge::io::ParseError(std::string("GESFORGE_SEED is not an unsigned integer: ") + env);
    }
    cfg.seed_source = "env";
  }
}

void emit(const RunConfig& cfg, const json& doc) {
  if (cfg.out.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    gesforge::io::write_json_file(cfg.out, doc);
  }
}

// Summary lines go to stdout when the document is written to a file.
std::ostream& summary(const RunConfig& cfg) { return cfg.out.empty() ? std::cerr : std::cout; }

gesforge::ConstructionParams params_from_flags(RunConfig& cfg) {
  gesforge::ConstructionParams params;
  if (!cfg.dims.empty()) {
    params.dims = cfg.dims;
    params.n = cfg.n != 0 ? cfg.n : static_cast<int>(cfg.dims.size());
  } else {
    params = gesforge::ConstructionParams::homogeneous(cfg.n, cfg.d, cfg.K, 0);
  }
  params.K = cfg.K;
  params.p = cfg.p;
  if (!cfg.h_file.empty()) {
    params.h = gesforge::io::parse_h_file(gesforge::io::read_json_file(cfg.h_file));
  }
  params = gesforge::with_default_prime(params);
  cfg.n = params.n;
  cfg.dims = params.dims;
  cfg.p = params.p;
  return params;
}

// Vectors from --in or from parameter flags.
gesforge::io::VectorsDocument load_vectors(RunConfig& cfg) {
  if (!cfg.in.empty()) {
    return gesforge::io::vectors_from_json(gesforge::io::read_json_file(cfg.in));
  }
  gesforge::io::VectorsDocument doc;
  doc.params = params_from_flags(cfg);
  doc.table = gesforge::exponent_table(doc.params);
  doc.provenance = "formula";
  return doc;
}

int cmd_construct(RunConfig& cfg) {
  const auto params = params_from_flags(cfg);
  const auto table = gesforge::exponent_table(params);
  const auto vectors = gesforge::build_from_table(params, table);
  json doc = gesforge::io::vectors_to_json(params, table, vectors);
  doc["run_config"] = cfg.to_json();
  emit(cfg, doc);
  const long long D = gesforge::total_dimension(params.dims);
  const long long ges_dim = D - params.K;
  auto& s = summary(cfg);
  s << "p = " << params.p << '\n';
  s << "GES dimension: " << ges_dim << '\n';
  s << "maximal: " << (ges_dim == gesforge::max_ges_dimension(params.dims) ? "true" : "false") << '\n';
  return kCertified;
}

int cmd_verify(RunConfig& cfg) {
  const auto doc = load_vectors(cfg);
  const auto vectors = gesforge::build_from_table(doc.params, doc.table);
  auto exact = gesforge::verify_vectors(vectors, doc.params.dims, doc.params.p);
  if (cfg.max_size >= 0) {
    exact.chebotarev.push_back(gesforge::chebotarev_scan(doc.params.p, cfg.max_size));
  }

  std::vector<gesforge::ProductState> states;
  for (const auto& v : vectors) {
    states.push_back(v.state());
  }
  const auto numeric = gesforge::certify_ges_numeric(states, cfg.opts);

  json report;
  report["schema"] = gesforge::io::kReportSchema;
  report["tool_version"] = gesforge::io::tool_version();
  report["run_config"] = cfg.to_json();
  report["params"] = {{"n", doc.params.n}, {"dims", doc.params.dims}, {"K", doc.params.K}, {"p", doc.params.p}};
  report["provenance"] = doc.provenance;
  report["exact"] = gesforge::io::exact_report_to_json(exact);
  report["numeric"] = gesforge::io::numeric_certificate_to_json(numeric);

  bool consistent = true;
  try {
    const auto M = gesforge::numeric_matrix(vectors);
    std::optional<std::size_t> rank;
    if (exact.exact_available) {
      rank = exact.rank_of_M;
    }
    const auto basis = gesforge::ges_basis(M, doc.params.dims, rank);
    report["ges_dimension"] = basis.columns.cols();
    report["basis_residual"] = basis.residual;
  } catch (const gesforge::NumericalPathology& e) {
    consistent = false;
    report["rank_inconsistency"] = e.what();
  }

  const bool exact_ok = exact.exact_available ? exact.pass() : true;
  const bool pass = exact_ok && numeric.pass && consistent;
  report["verdict"] = pass ? "certified" : "failed";
  emit(cfg, report);

  auto& s = summary(cfg);
  s << "exact: " << exact.status();
  if (exact.exact_available && !exact.rank_full) {
    s << " (rank of M = " << exact.rank_of_M << " < K = " << doc.params.K << ")";
  }
  s << '\n' << "numeric: " << (numeric.pass ? "certified" : "failed") << '\n';
  s << "verdict: " << (pass ? "certified" : "failed") << '\n';
  return pass ? kCertified : kFailed;
}

int cmd_chebotarev(RunConfig& cfg) {
  if (cfg.p < 2) {
    throw CLI::ValidationError("--p", "must be at least 2");
  }
  int size = cfg.max_size < 0 ? std::min(cfg.p, 6) : cfg.max_size;
  if (size > cfg.p) {
    std::cerr << "warning: --max-size " << size << " exceeds p; clamped to " << cfg.p << '\n';
    size = cfg.p;
  }
  cfg.max_size = size;
  const auto scan = gesforge::chebotarev_scan(cfg.p, size);
  json doc = gesforge::io::chebotarev_to_json(scan);
  doc["run_config"] = cfg.to_json();
  emit(cfg, doc);
  summary(cfg) << "p = " << cfg.p << ", minors checked: " << scan.minors_checked
               << ", zero minors: " << scan.witnesses.size() << '\n';
  return scan.witnesses.empty() ? kCertified : kFailed;
}

int cmd_basis(RunConfig& cfg) {
  const auto doc = load_vectors(cfg);
  const auto vectors = gesforge::build_from_table(doc.params, doc.table);
  std::optional<std::size_t> rank;
  if (gesforge::has_exact_scales(doc.params)) {
    rank = gesforge::certified_rank(gesforge::assemble_M(vectors, doc.params.dims, doc.params.p).entries);
    if (*rank != static_cast<std::size_t>(doc.params.K)) {
      std::cerr << "error: vectors are linearly dependent (exact rank " << *rank << " < K = " << doc.params.K
                << ")\n";
      return kFailed;
    }
  }
  gesforge::GesBasis basis;
  try {
    basis = gesforge::ges_basis(gesforge::numeric_matrix(vectors), doc.params.dims, rank);
  } catch (const gesforge::NumericalPathology& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  json out = gesforge::io::basis_to_json(basis);
  out["run_config"] = cfg.to_json();
  emit(cfg, out);
  summary(cfg) << "GES dimension: " << basis.columns.cols() << ", residual: " << basis.residual
               << ", orthonormality error: " << basis.orthonormality_error << '\n';
  const bool ok = basis.residual < 1e-10 && basis.orthonormality_error < 1e-10;
  return ok ? kCertified : kFailed;
}

int cmd_report(RunConfig& cfg) {
  const json doc = gesforge::io::read_json_file(cfg.in);
  if (doc.value("schema", "") != gesforge::io::kReportSchema) {
    throw gesforge::io::ParseError(std::string("expected a document with schema ") + gesforge::io::kReportSchema);
  }
  const auto& params = doc.at("params");
  std::cout << "instance: n=" << params.at("n") << " dims=" << params.at("dims").dump() << " K=" << params.at("K")
            << " p=" << params.at("p") << " (" << doc.value("provenance", "?") << ")\n";
  const auto& exact = doc.at("exact");
  std::cout << "exact: " << exact.value("status", "?");
  if (exact.contains("rank_of_M")) {
    std::cout << ", rank " << exact.at("rank_of_M");
  }
  std::cout << '\n';
  if (exact.contains("bipartitions")) {
    for (const auto& b : exact.at("bipartitions")) {
      std::cout << "  S=" << b.at("S").dump() << " dims " << b.at("dim_S") << "x" << b.at("dim_Sbar")
                << " spanning " << (b.at("spanning_S").at("holds").get<bool>() ? "yes" : "NO") << "/"
                << (b.at("spanning_Sbar").at("holds").get<bool>() ? "yes" : "NO") << '\n';
    }
  }
  const auto& numeric = doc.at("numeric");
  std::cout << "numeric: " << numeric.value("status", "?") << " (threshold "
            << numeric.at("hyperparameters").at("threshold") << ")\n";
  for (const auto& b : numeric.at("bipartitions")) {
    std::cout << "  S=" << b.at("S").dump() << " min biproduct value " << b.at("min_biproduct_value") << '\n';
  }
  const std::string verdict = doc.value("verdict", "failed");
  std::cout << "verdict: " << verdict << '\n';
  return verdict == "certified" ? kCertified : kFailed;
}

void add_param_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--n", cfg.n, "Number of parties");
  sub->add_option("--d", cfg.d, "Local dimension (homogeneous)");
  sub->add_option("--dims", cfg.dims, "Comma-separated local dimensions")->delimiter(',');
  sub->add_option("--k", cfg.K, "Number of product vectors K");
  sub->add_option("--p", cfg.p, "Prime modulus (default: smallest prime >= prod(dims))");
  sub->add_option("--h-file", cfg.h_file, "JSON file with per-party scale factors");
}

void add_optimizer_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--restarts", cfg.opts.restarts, "Random restarts per bipartition");
  sub->add_option("--tol", cfg.opts.tol, "Convergence tolerance of the alternating search");
  sub->add_option("--threshold", cfg.opts.threshold, "Minimum biproduct value certified as positive");
  sub->add_option("--seed", cfg.seed_flag, "Random seed (falls back to GESFORGE_SEED)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct nonorthogonal UPBs from DFT matrices and certify genuinely entangled subspaces"};
  app.set_version_flag("--version", gesforge::io::tool_version());
  app.require_subcommand(1);
  RunConfig cfg;

  auto* construct = app.add_subcommand("construct", "Build the product vectors and write them as JSON");
  add_param_flags(construct, cfg);
  construct->add_option("--out", cfg.out, "Output file (default: stdout)");

  auto* verify = app.add_subcommand("verify", "Exact and numeric certification of a vectors file or parameters");
  add_param_flags(verify, cfg);
  add_optimizer_flags(verify, cfg);
  verify->add_option("--in", cfg.in, "Vectors file from 'construct'");
  verify->add_option("--max-size", cfg.max_size, "Also scan DFT minors of order p up to this size");
  verify->add_option("--out", cfg.out, "Report file (default: stdout)");

  auto* cheb = app.add_subcommand("chebotarev", "Scan square minors of the p x p DFT matrix for exact zeros");
  cheb->add_option("--p", cfg.p, "DFT order (prime or composite)")->required();
  cheb->add_option("--max-size", cfg.max_size, "Largest minor size (default: min(p, 6))");
  cheb->add_option("--out", cfg.out, "Output file (default: stdout)");

  auto* basis = app.add_subcommand("basis", "Orthonormal basis of the orthocomplement");
  add_param_flags(basis, cfg);
  basis->add_option("--in", cfg.in, "Vectors file from 'construct'");
  basis->add_option("--out", cfg.out, "Output file (default: stdout)");

  auto* report = app.add_subcommand("report", "Summarize a verification report");
  report->add_option("--in", cfg.in, "Report file from 'verify'")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInvalid;
  }

  try {
    resolve_seed(cfg);
    if (construct->parsed()) {
      cfg.command = "construct";
      return cmd_construct(cfg);
    }
    if (verify->parsed()) {
      cfg.command = "verify";
      return cmd_verify(cfg);
    }
    if (cheb->parsed()) {
      cfg.command = "chebotarev";
      return cmd_chebotarev(cfg);
    }
    if (basis->parsed()) {
      cfg.command = "basis";
      return cmd_basis(cfg);
    }
    cfg.command = "report";
    return cmd_report(cfg);
  } catch (const gesforge::InvalidParams& e) {
    std::cerr << "invalid parameters:\n";
    for (const auto& v : e.violations()) {
      std::cerr << "  - " << v << '\n';
    }
    return kInvalid;
  } catch (const gesforge::io::ParseError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInvalid;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInvalid;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
}
