#include "gesforge/io.hpp"

#include <fstream>
#include <sstream>

namespace gesforge::io {

const char* tool_version() { return GESFORGE_VERSION; }

std::string rational_to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_str();
}

Rational rational_from_string(const std::string& s) {
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0) {
    throw ParseError("not a rational number: '" + s + "'");
  }
  if (r.get_den() == 0) {
    throw ParseError("zero denominator in '" + s + "'");
  }
  r.canonicalize();
  return r;
}

namespace {

json ints_to_strings(const std::vector<long long>& v) {
  json out = json::array();
  for (long long x : v) {
    out.push_back(std::to_string(x));
  }
  return out;
}

long long integer_from_json(const json& j) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      throw ParseError("not an integer: '" + s + "'");
    }
    if (used != s.size()) {
      throw ParseError("not an integer: '" + s + "'");
    }
    return v;
  }
  if (j.is_number_integer()) {
    return j.get<long long>();
  }
  throw ParseError("expected an integer string");
}

json cut_to_json(const Bipartition& b) {
  return json{{"S", b.parties}, {"Sbar", b.complement()}};
}

json spanning_to_json(const SpanningResult& s) {
  json out{{"holds", s.holds},
           {"subsets_checked", s.subsets_checked},
           {"failures", s.failures},
           {"exact_checks", s.exact_checks}};
  out["witness"] = s.witness ? json(*s.witness) : json(nullptr);
  return out;
}

}  // namespace

json scale_to_json(const Scale& s) {
  if (s.exact) {
    return rational_to_string(*s.exact);
  }
  return json::array({s.value.real(), s.value.imag()});
}

Scale scale_from_json(const json& j) {
  if (j.is_string()) {
    return Scale::rational(rational_from_string(j.get<std::string>()));
  }
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return Scale::floating({j[0].get<double>(), j[1].get<double>()});
  }
  if (j.is_number()) {
    return Scale::floating({j.get<double>(), 0.0});
  }
  throw ParseError("scale factor must be a rational string or an [re, im] pair");
}

ScaleTable parse_h_file(const json& j) {
  const json& rows = j.is_object() ? j.at("h") : j;
  if (!rows.is_array()) {
    throw ParseError("h must be an array of per-party arrays");
  }
  ScaleTable table;
  for (const auto& row : rows) {
    if (!row.is_array()) {
      throw ParseError("h must be an array of per-party arrays");
    }
    std::vector<Scale> party;
    for (const auto& e : row) {
      party.push_back(scale_from_json(e));
    }
    table.push_back(std::move(party));
  }
  return table;
}

json complex_vector_to_json(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    out.push_back(json::array({v(k).real(), v(k).imag()}));
  }
  return out;
}

json vectors_to_json(const ConstructionParams& params, const ExponentTable& table,
                     const std::vector<ProductVector>& vectors) {
  json out;
  out["schema"] = kVectorsSchema;
  out["tool_version"] = tool_version();
  out["params"] = {{"n", params.n}, {"dims", params.dims}, {"K", params.K}, {"p", params.p}};
  out["provenance"] = is_formula_table(params, table) ? "formula" : "user-supplied";
  json exps = json::array();
  for (const auto& row : table) {
    json parties = json::array();
    for (const auto& levels : row) {
      parties.push_back(ints_to_strings(levels));
    }
    exps.push_back(std::move(parties));
  }
  out["exponent_table"] = std::move(exps);
  if (params.h) {
    json h = json::array();
    for (const auto& row : *params.h) {
      json party = json::array();
      for (const auto& s : row) {
        party.push_back(scale_to_json(s));
      }
      h.push_back(std::move(party));
    }
    out["h"] = std::move(h);
  } else {
    out["h"] = nullptr;
  }
  json amps = json::array();
  for (const auto& v : vectors) {
    json parties = json::array();
    for (const auto& l : v.locals) {
      parties.push_back(complex_vector_to_json(l.amplitudes));
    }
    amps.push_back(std::move(parties));
  }
  out["amplitudes"] = std::move(amps);
  return out;
}

VectorsDocument vectors_from_json(const json& j) {
  if (!j.is_object() || j.value("schema", "") != kVectorsSchema) {
    throw ParseError(std::string("expected a document with schema ") + kVectorsSchema);
  }
  VectorsDocument doc;
  try {
    const auto& p = j.at("params");
    doc.params.n = p.at("n").get<int>();
    doc.params.dims = p.at("dims").get<std::vector<int>>();
    doc.params.K = p.at("K").get<int>();
    doc.params.p = p.at("p").get<int>();
    if (j.contains("h") && !j.at("h").is_null()) {
      doc.params.h = parse_h_file(j.at("h"));
    }
    for (const auto& row : j.at("exponent_table")) {
      std::vector<std::vector<long long>> parties;
      for (const auto& levels : row) {
        std::vector<long long> ks;
        for (const auto& k : levels) {
          ks.push_back(integer_from_json(k));
        }
        parties.push_back(std::move(ks));
      }
      doc.table.push_back(std::move(parties));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed vectors document: ") + e.what());
  }
  if (auto v = validate_params(doc.params); !v.empty()) {
    throw InvalidParams(std::move(v));
  }
  doc.provenance = is_formula_table(doc.params, doc.table) ? "formula" : "user-supplied";
  return doc;
}

json exact_report_to_json(const ExactReport& r) {
  json out;
  out["status"] = r.status();
  out["p"] = r.p;
  out["K"] = r.K;
  out["dims"] = r.dims;
  if (!r.exact_available) {
    out["skip_reason"] = r.skip_reason;
    return out;
  }
  out["rank_of_M"] = r.rank_of_M;
  out["rank_full"] = r.rank_full;
  json cuts = json::array();
  for (const auto& b : r.bipartitions) {
    json c = cut_to_json(b.cut);
    c["dim_S"] = b.dim_s;
    c["dim_Sbar"] = b.dim_sbar;
    c["count_ok"] = b.count_ok;
    c["spanning_S"] = spanning_to_json(b.spanning_s);
    c["spanning_Sbar"] = spanning_to_json(b.spanning_sbar);
    c["pass"] = b.pass();
    if (!b.note.empty()) {
      c["note"] = b.note;
    }
    cuts.push_back(std::move(c));
  }
  out["bipartitions"] = std::move(cuts);
  if (!r.chebotarev.empty()) {
    json scans = json::array();
    for (const auto& s : r.chebotarev) {
      scans.push_back(chebotarev_to_json(s));
    }
    out["chebotarev"] = std::move(scans);
  }
  out["pass"] = r.pass();
  return out;
}

json numeric_certificate_to_json(const NumericCertificate& c) {
  json out;
  out["status"] = c.pass ? "certified" : "failed";
  out["dims"] = c.dims;
  out["K"] = c.K;
  out["hyperparameters"] = {{"restarts", c.opts.restarts},
                            {"max_iters", c.opts.max_iters},
                            {"tol", c.opts.tol},
                            {"threshold", c.opts.threshold},
                            {"seed", std::to_string(c.opts.seed)}};
  json cuts = json::array();
  for (const auto& b : c.bipartitions) {
    json e = cut_to_json(b.cut);
    e["min_biproduct_value"] = b.search.value;
    e["pass"] = b.search.value > c.opts.threshold;
    e["restarts"] = b.search.restarts;
    e["best_restart"] = b.search.best_restart;
    e["sweeps"] = b.search.sweeps;
    e["converged"] = b.search.converged;
    e["argmin_state"] = complex_vector_to_json(b.search.state);
    cuts.push_back(std::move(e));
  }
  out["bipartitions"] = std::move(cuts);
  out["pass"] = c.pass;
  return out;
}

json chebotarev_to_json(const ChebotarevScan& scan) {
  json out;
  out["schema"] = kChebotarevSchema;
  out["tool_version"] = tool_version();
  out["p"] = scan.p;
  out["p_is_prime"] = is_prime(scan.p);
  out["max_size"] = scan.max_size;
  out["minors_checked"] = scan.minors_checked;
  out["zero_minor_count"] = scan.witnesses.size();
  json w = json::array();
  for (const auto& m : scan.witnesses) {
    w.push_back({{"rows", m.rows}, {"cols", m.cols}});
  }
  out["witnesses"] = std::move(w);
  return out;
}

json basis_to_json(const GesBasis& basis) {
  json out;
  out["schema"] = kBasisSchema;
  out["tool_version"] = tool_version();
  out["dims"] = basis.dims;
  out["rank"] = basis.rank;
  out["rank_source"] = basis.rank_from_exact ? "exact" : "floating";
  out["ges_dimension"] = basis.columns.cols();
  out["residual"] = basis.residual;
  out["orthonormality_error"] = basis.orthonormality_error;
  json cols = json::array();
  for (Eigen::Index k = 0; k < basis.columns.cols(); ++k) {
    cols.push_back(complex_vector_to_json(basis.columns.col(k)));
  }
  out["columns"] = std::move(cols);
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open '" + path + "'");
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write '" + path + "'");
  }
  out << j.dump(2) << '\n';
}

}  // namespace gesforge::io
