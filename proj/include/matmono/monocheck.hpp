#pragma once

// Sampling checkers for the four monotonicity notions, the lambda_min trace
// along a segment, and the catalog of closed-form counterexamples.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "matmono/primfn.hpp"
#include "matmono/rng.hpp"
#include "matmono/symcore.hpp"

namespace matmono {

enum class Notion { HMon, OMon, SMon, PMon };

const char* to_string(Notion n);
/// Accepts "h", "o", "s", "p" and the tags "H-mon" etc.
Notion parse_notion(std::string_view s);

/// Where a map may be evaluated and how samples are drawn from it.
struct SampleDomain {
  enum class Kind { Sym, PSym, Interval, Custom };
  Kind kind = Kind::Sym;
  Interval interval;  // used when kind == Interval
  // used when kind == Custom
  std::string label;
  std::function<SymMatrix(Rng&, int, double)> sampler;
  std::function<bool(const SymMatrix&)> membership;

  static SampleDomain sym() { return {}; }
  static SampleDomain psym() { return {Kind::PSym, Interval::positive(), {}, {}, {}}; }
  static SampleDomain spectrum_in(Interval i) { return {Kind::Interval, i, {}, {}, {}}; }
  static SampleDomain custom(std::string label, std::function<SymMatrix(Rng&, int, double)> sampler,
                             std::function<bool(const SymMatrix&)> membership) {
    return {Kind::Custom, {}, std::move(label), std::move(sampler), std::move(membership)};
  }
  /// The open spectral interval this domain stands for (the real line for
  /// custom domains).
  Interval spectral_interval() const;

  bool contains(const SymMatrix& a) const;
  /// Sym: random_symmetric; PSym: random_psym; finite intervals: uniform
  /// spectrum in a random orthogonal frame.
  SymMatrix sample(Rng& rng, int n, double scale) const;
  std::string describe() const;
};

struct MatrixMap {
  std::string name;
  std::function<SymMatrix(const SymMatrix&)> eval;
  SampleDomain domain;
  /// Set for maps induced by a scalar function; S-mon applies only to those.
  std::optional<ScalarFunction> primary;

  bool is_primary() const { return primary.has_value(); }
};

MatrixMap primary_map(const ScalarFunction& fn, SampleDomain domain);
/// C -> det(C) 1 on PSym(n).
MatrixMap det_identity_map();

/// "square" (PSym), "log" (PSym), "exp", "cube", "id", "cubic-mono",
/// "softplus" (all Sym) and "det-identity" (PSym). ConfigError otherwise.
MatrixMap builtin_map(std::string_view name);
std::vector<std::string> builtin_map_names();

struct SampleSpec {
  std::uint64_t seed = kDefaultSeed;
  int count = 1000;
  int n = 2;
  double scale = 1.0;
  /// Overrides the map's own domain for sampling when set.
  std::optional<SampleDomain> domain;
  /// Margins in [-tol, tol] count as boundary, below -tol as violations.
  double tol = 1e-10;
  int max_witnesses = 16;
  int max_retries = 100;

  void validate() const;
};

struct Witness {
  SymMatrix a;
  SymMatrix b_or_h;  // B for H-mon; the increment P or H for O-mon and P-mon
  double margin = 0.0;
};

struct ScalarWitness {
  double a = 0.0;
  double b = 0.0;
  double margin = 0.0;
};

struct MonotonicityReport {
  Notion notion = Notion::HMon;
  std::string map;
  int n = 0;
  int samples = 0;
  int violations = 0;
  int boundary_count = 0;
  double worst_margin = 0.0;
  std::uint64_t seed = kDefaultSeed;
  std::vector<Witness> witnesses;
  /// S-mon only (n = 1): pairs of scalar arguments.
  std::vector<ScalarWitness> scalar_witnesses;

  bool passed() const { return violations == 0; }
};

/// <f(B) - f(A), B - A> / ||B - A||^2.
double hmon_margin(const MatrixMap& map, const SymMatrix& a, const SymMatrix& b);
/// lambda_min(f(A + P) - f(A)) / ||P||.
double omon_margin(const MatrixMap& map, const SymMatrix& a, const SymMatrix& p);
/// <f(A + H) - f(A), H> / ||H||^2.
double pmon_margin(const MatrixMap& map, const SymMatrix& a, const SymMatrix& h);
/// Recomputes the margin of a stored witness.
double replay_margin(Notion notion, const MatrixMap& map, const Witness& w);

MonotonicityReport check_hmon(const MatrixMap& map, const SampleSpec& spec);
MonotonicityReport check_omon(const MatrixMap& map, const SampleSpec& spec);
MonotonicityReport check_pmon(const MatrixMap& map, const SampleSpec& spec);

struct ScalarReport {
  std::string map;
  int samples = 0;
  int violations = 0;
  int boundary_count = 0;
  double worst_margin = 0.0;
  std::vector<ScalarWitness> witnesses;

  bool passed() const { return violations == 0; }
};

/// Order preservation on the sorted points; the margin of a consecutive pair
/// is the slope (f(b) - f(a)) / (b - a).
ScalarReport check_smon(const ScalarFunction& fn, std::vector<double> points, double tol = 1e-10);
/// smon_grid(fn.domain, count). The grid is geometric on (0, inf)
/// from 1e-3 to 1e3, linear on [-8, 8] for the real line, interior points of
/// a finite interval otherwise.
ScalarReport check_smon(const ScalarFunction& fn, int count = 1000, double tol = 1e-10);
std::vector<double> smon_grid(const Interval& domain, int count);

/// Dispatches to the sampling checker of the notion. SMon requires a primary
/// map and is reported through a converted ScalarReport (n = 1).
MonotonicityReport check(Notion notion, const MatrixMap& map, const SampleSpec& spec);

struct ImplicationPattern {
  std::string map;
  std::optional<bool> h, o, s, p;  // empty: not applicable
  std::vector<MonotonicityReport> reports;

  /// O pass implies P pass; for primary maps S, H and P agree.
  bool consistent() const;
  /// e.g. "H+ O- S+ P+" with "S." for not applicable.
  std::string pattern() const;
};

/// Runs all applicable checkers with the seed of `spec`.
ImplicationPattern implication_matrix(const MatrixMap& map, const SampleSpec& spec);

/// Seeded search for an O-mon violation of `map` on PSym(n): random pairs,
/// then coordinate-wise refinement of the best pair toward a more negative
/// margin. Returns nothing when no negative margin was met.
std::optional<Witness> find_omon_witness(const MatrixMap& map, int n, std::uint64_t seed, int random_trials = 2000,
                                         int refine_iterations = 400);

/// Operator matrix of H -> (map(A + hH) - map(A - hH)) / (2h) in the SymBasis.
SymOperator fd_operator(const MatrixMap& map, const SymMatrix& a, double h = 1e-6);

struct CurvePoint {
  double t = 0.0;
  double lambda_min = 0.0;
  /// smallest |eigenvalue| of the symmetric part
  double min_abs = 0.0;
};

struct CurveTrace {
  std::vector<CurvePoint> points;
  /// Some sample above +tol and some below -tol.
  bool sign_change = false;
  /// First sign flip bracket (t_lo, t_hi) when sign_change.
  std::optional<std::pair<double, double>> bracket;
};

using OperatorField = std::function<SymOperator(const SymMatrix&)>;

/// lambda_min of the symmetric part of field(a0 + t (a1 - a0)) on
/// t = 0, 1/steps, ..., 1. A DomainError thrown by the field is rethrown
/// with the curve parameter attached.
CurveTrace lambda_min_along_curve(const OperatorField& field, const SymMatrix& a0, const SymMatrix& a1, int steps,
                                  double tol = 1e-9);

/// <D map[gamma(t)].H, H> on the same grid with H = a1 - a0 and the
/// derivative taken by central differences. Its integral over [0,1] equals
/// <map(a1) - map(a0), a1 - a0>.
std::vector<std::pair<double, double>> rayleigh_along_curve(const MatrixMap& map, const SymMatrix& a0,
                                                            const SymMatrix& a1, int steps, double h = 1e-6);

struct CatalogEntry {
  std::string name;
  double expected = 0.0;
  double computed = 0.0;
  double tol = 1e-9;

  double abs_error() const;
  bool passed() const { return abs_error() <= tol; }
};

/// <exp(K) - exp(-K), 2K> with K = [[0, -alpha], [alpha, 0]].
double skew_exp_inner(double alpha);

/// Closed-form counterexamples and identities, recomputed from scratch.
std::vector<CatalogEntry> counterexample_catalog();

}  // namespace matmono
