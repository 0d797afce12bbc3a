#ifndef GESFORGE_IO_HPP
#define GESFORGE_IO_HPP

#include <json.hpp>
#include <string>
#include <vector>

#include "gesforge/construct.hpp"
#include "gesforge/exactverify.hpp"
#include "gesforge/numcert.hpp"

namespace gesforge::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kVectorsSchema = "gesforge.vectors/1";
inline constexpr const char* kReportSchema = "gesforge.report/1";
inline constexpr const char* kChebotarevSchema = "gesforge.chebotarev/1";
inline constexpr const char* kBasisSchema = "gesforge.basis/1";

const char* tool_version();

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact rationals travel as "num" or "num/den" strings.
std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& s);

json scale_to_json(const Scale& s);
Scale scale_from_json(const json& j);

/// Reads {"h": [[entry, ...], ...]}; entries are rational strings or [re, im] pairs.
ScaleTable parse_h_file(const json& j);

struct VectorsDocument {
  ConstructionParams params;
  ExponentTable table;
  std::string provenance;  // "formula" or "user-supplied"
};

json vectors_to_json(const ConstructionParams& params, const ExponentTable& table,
                     const std::vector<ProductVector>& vectors);

/// Validates the schema and parameters; throws ParseError or InvalidParams.
VectorsDocument vectors_from_json(const json& j);

json exact_report_to_json(const ExactReport& r);
json numeric_certificate_to_json(const NumericCertificate& c);
json chebotarev_to_json(const ChebotarevScan& scan);
json basis_to_json(const GesBasis& basis);
json complex_vector_to_json(const Eigen::VectorXcd& v);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace gesforge::io

#endif  // GESFORGE_IO_HPP
