#pragma once

// Isotropic stress responses written in the logarithmic strain L = log V:
// Hencky, the exponential TSTS energy and the exponentiated Hencky energy.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "matmono/monocheck.hpp"
#include "matmono/primfn.hpp"
#include "matmono/symcore.hpp"

namespace matmono {

enum class ModelKind { Hencky, TstsExp, ExpHencky };

const char* to_string(ModelKind k);
/// "hencky", "tsts", "exp-hencky". ConfigError otherwise.
ModelKind parse_model_kind(std::string_view s);

struct MaterialParams {
  double mu = 1.0;
  double kappa = 1.0;
  double lambda = 1.0;  // Lame constant of the TSTS energy
  double k = 1.0;
  double k_hat = 1.0;
  double sigma_y = 0.0;
};

/// Parameter thresholds are checked on construction (ConfigError):
///   Hencky     mu > 0, kappa > 0
///   TstsExp    mu > 0, k > 3/8, k_hat > 1/8
///   ExpHencky  mu > 0, kappa > 0, k > 1/3, k_hat > 1/8
/// and sigma_y >= 0 for every model.
class StressModel {
 public:
  StressModel(ModelKind kind, MaterialParams params);

  ModelKind kind() const { return kind_; }
  const MaterialParams& params() const { return params_; }

  /// W as a function of L.
  double energy(const SymMatrix& l) const;
  /// tau = dW/dL in closed form.
  SymMatrix kirchhoff(const SymMatrix& l) const;
  /// e^{-tr L} tau(L).
  SymMatrix cauchy(const SymMatrix& l) const;

 private:
  ModelKind kind_;
  MaterialParams params_;
};

/// V positive definite together with L = log V.
class StrainState {
 public:
  /// DomainError when V is not positive definite.
  static StrainState from_stretch(const SymMatrix& v);
  static StrainState from_log_strain(const SymMatrix& l);

  const SymMatrix& v() const { return v_; }
  const SymMatrix& logv() const { return logv_; }
  int dim() const { return v_.dim(); }

 private:
  StrainState(SymMatrix v, SymMatrix l) : v_(std::move(v)), logv_(std::move(l)) {}
  SymMatrix v_;
  SymMatrix logv_;
};

double energy(const StressModel& model, const StrainState& state);
SymMatrix kirchhoff_stress(const StressModel& model, const StrainState& state);
SymMatrix cauchy_stress(const StressModel& model, const StrainState& state);

struct TstsOperator {
  SymOperator raw;        // as differenced
  SymOperator symmetric;  // (raw + raw^T)/2
  double asymmetry = 0.0;
  double step = 0.0;
  double lambda_min = 0.0;
  std::vector<std::string> warnings;
};

/// H -> D sigma_hat[L].H by central differences with
/// h = step_factor * max(1, ||L||) in every basis direction. A warning is
/// recorded when halving the step moves the operator by more than 1e-5
/// relative.
TstsOperator tsts_operator(const StressModel& model, const StrainState& state, double step_factor = 1e-5);

/// ||dev L||^2 <= (2/3) sigma_y^2, evaluated as 3 ||dev L||^2 <= 2 sigma_y^2.
bool elastic_domain_contains(const SymMatrix& log_strain, double sigma_y);
bool elastic_domain_contains(const StrainState& state, double sigma_y);

/// Samples L = random_symmetric and pulls the deviatoric part into the ball
/// of radius sigma_y sqrt(2/3) when it lies outside.
SampleDomain elastic_domain(double sigma_y);

/// X -> sigma_hat(X) as a map on Sym(n).
MatrixMap cauchy_map(const StressModel& model);
/// L -> tau(L).
MatrixMap kirchhoff_map(const StressModel& model);

struct ScanSpec {
  SampleSpec sample{};
  bool elastic_only = false;  // sample inside the elastic domain of the model
  ScanSpec() { sample.n = 3; }
};

/// Pairwise H-mon scan of L -> sigma_hat(L).
MonotonicityReport tsts_scan(const StressModel& model, const ScanSpec& spec);

/// H-mon scan of L -> 2 mu dev L + kappa tr(L) 1 (Hencky parameters).
MonotonicityReport hill_check(const MaterialParams& params, const SampleSpec& spec);
/// H-mon scan of V -> tau(log V) on PSym(n).
MonotonicityReport hill_stretch_scan(const MaterialParams& params, const SampleSpec& spec);

struct HenckyGridPoint {
  double s = 0.0;  // isochoric shear amplitude
  double d = 0.0;  // dilation
  double lambda_min = 0.0;
};

struct HenckyWitness {
  SymMatrix x;
  SymMatrix y;
  double margin = 0.0;  // H-mon margin of sigma_hat at (x, y)
  double s = 0.0;
  double d = 0.0;            // grid point the witness is centred on
  double d_boundary = 0.0;   // bisected zero of lambda_min in d at fixed s
  std::vector<HenckyGridPoint> grid;
};

/// Grid L = d 1 + s diag(1,-1,0,...)/sqrt(2), s in [0,1], d in [-1,2],
/// step 1/4, scanned s-major. At the first (s, d) where lambda_min of the
/// symmetrized operator turns negative after a positive value, d is
/// bisected to the sign change and the witness pair is L +- delta w with
/// w the lambda_min eigenvector. nullopt when no sign change is met.
std::optional<HenckyWitness> hencky_violation_search(const MaterialParams& params, int n = 3, double delta = 1e-3);

}  // namespace matmono
