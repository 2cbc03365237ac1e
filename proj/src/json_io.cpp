#include "matmono/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "matmono/errors.hpp"

namespace matmono {

namespace {

// JSON has no infinities; an empty report keeps worst_margin = +inf.
Json number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

Json to_json(const GeneralMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const SymMatrix& m) { return to_json(m.general()); }

Json to_json(const MonotonicityReport& r) {
  Json j;
  j["notion"] = to_string(r.notion);
  j["map"] = r.map;
  j["n"] = r.n;
  j["samples"] = r.samples;
  j["violations"] = r.violations;
  j["worst_margin"] = number(r.worst_margin);
  j["boundary_count"] = r.boundary_count;
  j["seed"] = r.seed;
  Json ws = Json::array();
  for (const auto& w : r.witnesses) ws.push_back({{"a", to_json(w.a)}, {"b_or_h", to_json(w.b_or_h)}, {"margin", w.margin}});
  for (const auto& w : r.scalar_witnesses) ws.push_back({{"a", w.a}, {"b_or_h", w.b}, {"margin", w.margin}});
  j["witnesses"] = std::move(ws);
  return j;
}

Json to_json(const std::vector<CatalogEntry>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back({{"name", r.name},
                   {"expected", r.expected},
                   {"computed", r.computed},
                   {"abs_error", r.abs_error()},
                   {"tol", r.tol},
                   {"passed", r.passed()}});
  }
  return out;
}

Json to_json(const StressModel& m) {
  const auto& p = m.params();
  Json j;
  j["model"] = to_string(m.kind());
  j["mu"] = p.mu;
  j["kappa"] = p.kappa;
  j["lambda"] = p.lambda;
  j["k"] = p.k;
  j["k_hat"] = p.k_hat;
  j["sigma_y"] = p.sigma_y;
  return j;
}

StressModel model_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("model configuration must be a JSON object");
  if (!j.contains("model") || !j["model"].is_string()) throw ConfigError("model configuration needs a \"model\" name");
  MaterialParams p;
  const std::pair<const char*, double*> fields[] = {{"mu", &p.mu},       {"kappa", &p.kappa}, {"lambda", &p.lambda},
                                                    {"k", &p.k},         {"k_hat", &p.k_hat}, {"sigma_y", &p.sigma_y}};
  for (const auto& [key, value] : j.items()) {
    if (key == "model") continue;
    double* slot = nullptr;
    for (const auto& [name, ptr] : fields) {
      if (key == name) slot = ptr;
    }
    if (!slot) throw ConfigError("unknown model parameter '" + key + "'");
    if (!value.is_number()) throw ConfigError("model parameter '" + key + "' must be a number");
    *slot = value.get<double>();
  }
  return StressModel(parse_model_kind(j["model"].get<std::string>()), p);
}

StressModel parse_model(std::string_view text_or_path) {
  const auto first = text_or_path.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text_or_path[first] == '{') {
    try {
      return model_from_json(Json::parse(text_or_path));
    } catch (const Json::parse_error& e) {
      throw ConfigError(std::string("cannot parse model: ") + e.what());
    }
  }
  return model_from_json(read_json_file(std::string(text_or_path)));
}

GeneralMatrix general_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ShapeError("matrix must be a non-empty array of rows");
  const auto n = j.size();
  std::vector<double> data;
  data.reserve(n * n);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != n) throw ShapeError("matrix must be square");
    for (const auto& x : row) {
      if (!x.is_number()) throw ConfigError("matrix entries must be numbers");
      data.push_back(x.get<double>());
    }
  }
  return GeneralMatrix(static_cast<int>(n), std::move(data));
}

SymMatrix sym_from_json(const Json& j) { return SymMatrix(general_from_json(j)); }

SymMatrix parse_sym_matrix(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("cannot parse matrix '" + std::string(text) + "': " + e.what());
  }
  return sym_from_json(j);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("cannot parse '" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

Json witness_fixture(const std::string& map, Notion notion, std::uint64_t seed, const Witness& w) {
  Json j;
  j["map"] = map;
  j["notion"] = to_string(notion);
  j["seed"] = seed;
  j["a"] = to_json(w.a);
  j["b_or_h"] = to_json(w.b_or_h);
  j["margin"] = w.margin;
  return j;
}

Witness witness_from_fixture(const Json& j) {
  try {
    return {sym_from_json(j.at("a")), sym_from_json(j.at("b_or_h")), j.at("margin").get<double>()};
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed witness: ") + e.what());
  }
}

std::string trace_csv(const CurveTrace& trace) {
  std::ostringstream os;
  os.precision(17);
  os << "t,lambda_min,min_abs\n";
  for (const auto& p : trace.points) os << p.t << ',' << p.lambda_min << ',' << p.min_abs << '\n';
  return os.str();
}

}  // namespace matmono
