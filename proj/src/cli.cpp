#include "matmono/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>

#include "matmono/elast.hpp"
#include "matmono/errors.hpp"
#include "matmono/golden.hpp"
#include "matmono/jogcalc.hpp"
#include "matmono/json_io.hpp"
#include "matmono/monocheck.hpp"
#include "matmono/primfn.hpp"

namespace matmono {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Sampling {
  explicit Sampling(int dim) : n(dim) {}

  int n;
  int samples = 1000;
  std::uint64_t seed = kDefaultSeed;
  double scale = 1.0;
  double tol = 1e-10;
  bool expect_violations = false;
  std::string witness_out;

  SampleSpec spec() const {
    SampleSpec s;
    s.seed = seed;
    s.count = samples;
    s.n = n;
    s.scale = scale;
    s.tol = tol;
    s.validate();
    return s;
  }

  int verdict(int violations) const {
    const bool found = violations > 0;
    return found == expect_violations ? exit_code::kClean : exit_code::kViolations;
  }
};

struct Options {
  std::string config;
  std::string out;

  std::string fn;
  std::string matrix;
  bool derivative = false;
  std::string direction;

  std::string map;
  std::string notion = "h";
  std::string replay;
  Sampling mono{2};

  std::string model;
  std::string domain = "sym";
  Sampling tsts{3};

  int path_steps = 101;
  bool golden_json = false;

  std::string trace_map;
  std::string from;
  std::string to;
  int trace_steps = 51;
  bool rayleigh = false;
  std::string trace_model;
};

void add_sampling(CLI::App* sub, Sampling& s) {
  sub->add_option("--n", s.n, "Matrix dimension")->capture_default_str();
  sub->add_option("--samples", s.samples, "Number of sampled pairs")->capture_default_str();
  sub->add_option("--seed", s.seed, "Base seed of the per-sample streams")->capture_default_str();
  sub->add_option("--scale", s.scale, "Entry scale of the sampled matrices")->capture_default_str();
  sub->add_option("--tol", s.tol, "Margins in [-tol, tol] count as boundary")->capture_default_str();
  sub->add_flag("--expect-violations", s.expect_violations, "Exit 0 when violations are found, 1 otherwise");
  sub->add_option("--witness-out", s.witness_out, "Write the worst witness as a replayable fixture");
}

SymMatrix matrix_arg(const std::string& text, const char* what) {
  try {
    return parse_sym_matrix(text);
  } catch (const ConfigError& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  } catch (const ShapeError& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
}

MatrixMap map_arg(const std::string& name) {
  try {
    return builtin_map(name);
  } catch (const ConfigError&) {
    std::string known;
    for (const auto& m : builtin_map_names()) known += (known.empty() ? "" : ", ") + m;
    throw UsageError("unknown map '" + name + "' (known: " + known + ")");
  }
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
  } else {
    write_text_file(o.out, text);
  }
}

const Witness* worst(const std::vector<Witness>& ws) {
  if (ws.empty()) return nullptr;
  return &*std::min_element(ws.begin(), ws.end(), [](const Witness& a, const Witness& b) { return a.margin < b.margin; });
}

// --config: keys of the JSON object become long options of the selected
// command, unless the same option was given on the command line.
std::vector<std::string> merge_config(const CLI::App& app, std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;

  const CLI::App* sub = nullptr;
  for (const auto& a : args) {
    if (a.empty() || a[0] == '-') continue;
    if (const auto* s = app.get_subcommand_no_throw(a)) {
      sub = s;
      break;
    }
  }
  const Json cfg = read_json_file(path);
  if (!cfg.is_object()) throw ConfigError("config file must hold a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    if (key == "config") continue;
    const bool explicit_flag = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (explicit_flag) continue;

    bool known = app.get_option_no_throw(flag) != nullptr;
    for (const auto* s : app.get_subcommands([](const CLI::App*) { return true; })) {
      known = known || s->get_option_no_throw(flag) != nullptr;
    }
    if (!known) throw ConfigError("unknown config key '" + key + "'");
    if (!sub || !sub->get_option_no_throw(flag)) continue;

    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_string()) {
      args.push_back(flag);
      args.push_back(value.get<std::string>());
    } else {
      args.push_back(flag);
      args.push_back(value.dump());
    }
  }
  return args;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const ScalarFunction* fn = nullptr;
  try {
    fn = &builtin_function(o.fn);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  const SymMatrix a = matrix_arg(o.matrix, "matrix");

  Json j;
  j["function"] = o.fn;
  j["a"] = to_json(a);
  j["value"] = to_json(apply_primary(*fn, a));
  if (o.derivative) {
    const SymOperator op = frechet(*fn, a);
    if (o.direction.empty()) {
      j["derivative"] = {{"basis", "E_ii, then (E_ij + E_ji)/sqrt(2) for i < j, row-major"},
                         {"matrix", to_json(op.matrix())}};
    } else {
      const SymMatrix h = matrix_arg(o.direction, "direction");
      if (h.dim() != a.dim()) throw UsageError("direction and matrix differ in dimension");
      j["derivative"] = {{"direction", to_json(h)}, {"value", to_json(op.apply(h))}};
    }
  }
  emit(dump(j), o, out);
  return exit_code::kClean;
}

bool admissible(Notion notion, const MatrixMap& map, const Witness& w) {
  if (!map.domain.contains(w.a)) return false;
  switch (notion) {
    case Notion::HMon: return map.domain.contains(w.b_or_h);
    case Notion::OMon:
      return classify(w.b_or_h).kind == Definiteness::PositiveDefinite && map.domain.contains(w.a + w.b_or_h);
    default: return map.domain.contains(w.a + w.b_or_h);
  }
}

int cmd_mono(const Options& o, std::ostream& out) {
  const MatrixMap map = map_arg(o.map);
  const SampleSpec spec = o.mono.spec();
  Json j;
  int violations = 0;
  const Witness* to_save = nullptr;
  Notion saved_notion = Notion::HMon;
  std::optional<ImplicationPattern> pattern;
  std::optional<MonotonicityReport> report;

  if (o.notion == "all") {
    pattern = implication_matrix(map, spec);
    j["map"] = map.name;
    j["n"] = spec.n;
    j["seed"] = spec.seed;
    j["pattern"] = pattern->pattern();
    j["consistent"] = pattern->consistent();
    j["reports"] = Json::array();
    for (const auto& r : pattern->reports) {
      j["reports"].push_back(to_json(r));
      violations += r.violations;
      if (!to_save && worst(r.witnesses)) {
        to_save = worst(r.witnesses);
        saved_notion = r.notion;
      }
    }
  } else {
    Notion notion;
    try {
      notion = parse_notion(o.notion);
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
    report = check(notion, map, spec);
    j = to_json(*report);
    violations = report->violations;
    to_save = worst(report->witnesses);
    saved_notion = notion;

    if (!o.replay.empty()) {
      if (notion == Notion::SMon) throw UsageError("--replay takes matrix witnesses (not S-mon)");
      const Witness w = witness_from_fixture(read_json_file(o.replay));
      const bool ok = admissible(notion, map, w);
      const double margin = replay_margin(notion, map, w);
      j["replay"] = {{"a", to_json(w.a)}, {"b_or_h", to_json(w.b_or_h)}, {"margin", margin}, {"admissible", ok}};
      if (ok && margin < -spec.tol) ++violations;
    }
  }

  if (!o.mono.witness_out.empty() && to_save) {
    write_text_file(o.mono.witness_out, dump(witness_fixture(map.name, saved_notion, spec.seed, *to_save)));
  }
  emit(dump(j), o, out);
  return o.mono.verdict(violations);
}

int cmd_tsts(const Options& o, std::ostream& out) {
  const StressModel model = parse_model(o.model);
  ScanSpec scan;
  scan.sample = o.tsts.spec();
  scan.elastic_only = o.domain == "elastic";
  const MonotonicityReport report = tsts_scan(model, scan);

  Json j = to_json(report);
  j["model"] = to_json(model);
  j["domain"] = scan.elastic_only ? elastic_domain(model.params().sigma_y).describe() : std::string("sym");
  int violations = report.violations;
  const Witness* to_save = worst(report.witnesses);

  std::optional<Witness> grid;
  if (model.kind() == ModelKind::Hencky) {
    if (const auto w = hencky_violation_search(model.params(), scan.sample.n)) {
      j["grid_search"] = {{"shear", w->s},        {"dilation", w->d},  {"dilation_boundary", w->d_boundary},
                          {"a", to_json(w->y)},   {"b", to_json(w->x)}, {"margin", w->margin}};
      if (w->margin < -scan.sample.tol) {
        ++violations;
        grid = Witness{w->y, w->x, w->margin};
      }
    } else {
      j["grid_search"] = nullptr;
    }
  }
  if (!to_save && grid) to_save = &*grid;
  if (!o.tsts.witness_out.empty() && to_save) {
    write_text_file(o.tsts.witness_out,
                    dump(witness_fixture(report.map, Notion::HMon, scan.sample.seed, *to_save)));
  }
  emit(dump(j), o, out);
  return o.tsts.verdict(violations);
}

int cmd_golden(const Options& o, std::ostream& out) {
  const auto rows = golden_table();
  emit(o.golden_json ? dump(to_json(rows)) : golden_text(rows), o, out);
  return all_passed(rows) ? exit_code::kClean : exit_code::kViolations;
}

int cmd_path(const Options& o, std::ostream& out) {
  emit(path_csv(run_path_experiment(o.path_steps)), o, out);
  return exit_code::kClean;
}

int cmd_trace(const Options& o, std::ostream& out) {
  const SymMatrix a0 = matrix_arg(o.from, "--from");
  const SymMatrix a1 = matrix_arg(o.to, "--to");
  if (a0.dim() != a1.dim()) throw UsageError("--from and --to differ in dimension");

  std::optional<MatrixMap> map;
  OperatorField field;
  if (o.trace_map == "cauchy") {
    if (o.trace_model.empty()) throw UsageError("map 'cauchy' needs --model");
    const StressModel model = parse_model(o.trace_model);
    map = cauchy_map(model);
    field = [model](const SymMatrix& l) { return tsts_operator(model, StrainState::from_log_strain(l)).raw; };
  } else {
    map = map_arg(o.trace_map);
    if (map->primary) {
      const ScalarFunction fn = *map->primary;
      field = [fn](const SymMatrix& a) { return frechet(fn, a); };
    } else {
      const MatrixMap m = *map;
      field = [m](const SymMatrix& a) { return fd_operator(m, a); };
    }
  }

  if (o.rayleigh) {
    std::ostringstream os;
    os.precision(17);
    os << "t,rayleigh\n";
    for (const auto& [t, q] : rayleigh_along_curve(*map, a0, a1, o.trace_steps)) os << t << ',' << q << '\n';
    emit(os.str(), o, out);
  } else {
    emit(trace_csv(lambda_min_along_curve(field, a0, a1, o.trace_steps)), o, out);
  }
  return exit_code::kClean;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Monotonicity checks for primary matrix functions and elastic stress responses", "matmono"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", o.config, "JSON object of option values; explicit flags take precedence");
  app.add_option("--out", o.out, "Write the report here instead of standard output");

  auto* eval = app.add_subcommand("eval", "Evaluate f(A), optionally with its Frechet derivative");
  eval->add_option("function", o.fn, "Registered scalar function")->required();
  eval->add_option("matrix", o.matrix, "Symmetric matrix as a JSON array of rows")->required();
  auto* dflag = eval->add_flag("--derivative", o.derivative, "Also print Df[A] (or Df[A].H with --direction)");
  eval->add_option("--direction", o.direction, "Direction H as a JSON array of rows")->needs(dflag);

  auto* mono = app.add_subcommand("mono", "Sample a monotonicity notion for a registered map");
  mono->add_option("map", o.map, "Registered map")->required();
  mono->add_option("--notion", o.notion, "h, o, p, s or all")
      ->check(CLI::IsMember({"h", "o", "p", "s", "all"}))
      ->capture_default_str();
  mono->add_option("--replay", o.replay, "Witness fixture to replay against the map");
  add_sampling(mono, o.mono);

  auto* tsts = app.add_subcommand("tsts", "Scan the true-stress-true-strain monotonicity of a stress model");
  tsts->add_option("--model", o.model, "Model JSON, inline or as a file path")->required();
  tsts->add_option("--domain", o.domain, "sym or elastic")
      ->check(CLI::IsMember({"sym", "elastic"}))
      ->capture_default_str();
  add_sampling(tsts, o.tsts);

  auto* golden = app.add_subcommand("golden", "Recompute the table of closed-form values");
  golden->add_flag("--json", o.golden_json, "Emit JSON instead of the text table");

  auto* path = app.add_subcommand("path", "CSV of the invertible-but-not-positive path");
  path->add_option("--steps", o.path_steps, "Grid points on [0, 1]")->capture_default_str();

  auto* trace = app.add_subcommand("trace", "CSV of lambda_min of the derivative along a segment");
  trace->add_option("map", o.trace_map, "Registered map, or 'cauchy' with --model")->required();
  trace->add_option("--from", o.from, "Start of the segment")->required();
  trace->add_option("--to", o.to, "End of the segment")->required();
  trace->add_option("--steps", o.trace_steps, "Grid points on [0, 1]")->capture_default_str();
  trace->add_flag("--rayleigh", o.rayleigh, "Print <D map[t].H, H> with H = to - from instead");
  trace->add_option("--model", o.trace_model, "Model JSON for map 'cauchy'");

  try {
    std::vector<std::string> merged = merge_config(app, args);
    std::reverse(merged.begin(), merged.end());
    app.parse(merged);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::kClean : exit_code::kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kConfig;
  }

  try {
    if (*eval) return cmd_eval(o, out);
    if (*mono) return cmd_mono(o, out);
    if (*tsts) return cmd_tsts(o, out);
    if (*golden) return cmd_golden(o, out);
    if (*path) return cmd_path(o, out);
    if (*trace) return cmd_trace(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kDomain;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kConfig;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const ShapeError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kInternal;
  }
  return exit_code::kUsage;
}

}  // namespace matmono
