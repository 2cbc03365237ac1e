#pragma once

// Products of self-adjoint operators, the chain-rule factorization of the
// Cauchy stress derivative, and the invertible-but-not-positive path.

#include <optional>
#include <string>
#include <vector>

#include "matmono/elast.hpp"
#include "matmono/primfn.hpp"
#include "matmono/symcore.hpp"

namespace matmono {

struct ProductVerdict {
  /// Set when a hypothesis for a positivity verdict fails; no verdict then.
  std::optional<std::string> refusal;
  /// Positive definiteness of A o B (only without refusal).
  std::optional<bool> pd;
  /// lambda_min of the symmetric part of A o B (always computed).
  double lambda_min = 0.0;
  double asymmetry_a = 0.0;
  double asymmetry_b = 0.0;
  double asymmetry_product = 0.0;

  bool refused() const { return refusal.has_value(); }
};

/// Requires A, B self-adjoint (asymmetry <= tol) and positive definite, and
/// A o B self-adjoint within tol; otherwise refuses with the failed
/// hypothesis named.
ProductVerdict product_pd(const SymOperator& a, const SymOperator& b, double tol = 1e-9);

struct OperatorTriple {
  OperatorTriple(SymOperator s_b, SymOperator b_l, SymOperator s_l)
      : dsigma_dB(std::move(s_b)), dB_dlogB(std::move(b_l)), dsigma_dlogB(std::move(s_l)) {}

  SymOperator dsigma_dB;       // central differences of V -> sigma_hat(log V)
  SymOperator dB_dlogB;        // Dexp[log V] by divided differences
  SymOperator dsigma_dlogB;    // central differences of L -> sigma_hat(L)
  double residual = 0.0;       // ||dsigma_dB o dB_dlogB - dsigma_dlogB||_F
  double scale = 1.0;          // max(1, ||dsigma_dlogB||_F)
  double step = 0.0;           // differencing step of the V leg
  double conditioning = 1.0;   // lambda_max / lambda_min of dB_dlogB

  double lambda_min_dsigma_dB = 0.0;     // symmetric part
  double lambda_min_dsigma_dlogB = 0.0;  // symmetric part
  double lambda_min_dB_dlogB = 0.0;
  double asymmetry_dsigma_dB = 0.0;
  double asymmetry_dsigma_dlogB = 0.0;

  /// dsigma_dlogB self-adjoint within hypothesis_tol and positive definite.
  bool log_hypothesis = false;
  /// With log_hypothesis: lambda_min of sym(dsigma_dlogB o dB_dlogB^{-1}).
  std::optional<double> propagated_lambda_min;
};

/// Builds the three operators at B := V. NumericalError when the
/// conditioning of dB_dlogB exceeds 1e12.
OperatorTriple chain_factorization(const StressModel& model, const StrainState& state, double step_factor = 1e-5,
                                   double hypothesis_tol = 1e-6);

struct PathRecord {
  double t = 0.0;
  double det_ab = 0.0;
  double det_sym_ab = 0.0;
  bool sym_pd = false;
  bool invertible = false;
  bool b_sym_pd = false;
};

struct PathExperiment {
  GeneralMatrix a;
  std::vector<PathRecord> records;
  /// Zero of det(sym(A B_t)) bracketed on the grid and bisected to 1e-12.
  std::optional<double> crossing;
};

/// A = diag(1, 1/8).
GeneralMatrix path_a();
/// B_t = [[1, -t], [0, 1]].
GeneralMatrix path_b(double t);
PathRecord path_record(double t);

/// Records on t = i/(t_steps - 1), i = 0..t_steps-1.
PathExperiment run_path_experiment(int t_steps);

/// t,det_AB,det_sym_AB,sym_pd,invertible
std::string path_csv(const PathExperiment& e);

}  // namespace matmono
