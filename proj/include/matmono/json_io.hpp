#pragma once

// JSON and CSV encodings of matrices, reports and fixtures.

#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "matmono/elast.hpp"
#include "matmono/monocheck.hpp"
#include "matmono/primfn.hpp"
#include "matmono/symcore.hpp"

namespace matmono {

using Json = nlohmann::ordered_json;

Json to_json(const GeneralMatrix& m);
Json to_json(const SymMatrix& m);
Json to_json(const MonotonicityReport& r);
Json to_json(const std::vector<CatalogEntry>& rows);

/// {model, mu, kappa, lambda, k, k_hat, sigma_y}
Json to_json(const StressModel& m);
/// {model, mu, kappa?, lambda?, k?, k_hat?, sigma_y?}; omitted parameters
/// keep their defaults. ConfigError on unknown keys, non-numbers and
/// parameter thresholds.
StressModel model_from_json(const Json& j);
/// Inline JSON object, or else the path of a file holding one.
StressModel parse_model(std::string_view text_or_path);

/// Square array of rows. ShapeError on ragged or non-square input,
/// ConfigError on non-numeric entries.
GeneralMatrix general_from_json(const Json& j);
/// As general_from_json followed by symmetrization.
SymMatrix sym_from_json(const Json& j);
/// Parses text such as "[[1,0],[0,2]]". ConfigError on malformed JSON.
SymMatrix parse_sym_matrix(std::string_view text);

/// Pretty-printed with a trailing newline; identical input gives identical bytes.
std::string dump(const Json& j);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// {map, notion, seed, a, b_or_h, margin}
Json witness_fixture(const std::string& map, Notion notion, std::uint64_t seed, const Witness& w);
Witness witness_from_fixture(const Json& j);

/// t,lambda_min,min_abs
std::string trace_csv(const CurveTrace& trace);

}  // namespace matmono
