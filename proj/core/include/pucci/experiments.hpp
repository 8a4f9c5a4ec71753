#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pucci/grid.hpp"
#include "pucci/oracles.hpp"
#include "pucci/solver.hpp"

namespace pucci {

/// One alpha of a sweep; oracle columns stay empty when no closed form
/// applies. ratio fields are lambda / (-alpha^2).
struct SweepRow {
  double alpha = 0.0;
  double h = 0.0;
  int nx = 0;
  int ny = 1;
  double lambda_plus = 0.0;
  double ratio_plus = 0.0;
  double lambda_minus = 0.0;
  double ratio_minus = 0.0;
  int iters_plus = 0;
  int iters_minus = 0;
  double residual_plus = 0.0;
  double residual_minus = 0.0;
  std::optional<double> oracle_lambda_plus;
  std::optional<double> oracle_lambda_minus;
  std::string status = "ok";
};

/// Ties the node count to alpha so alpha*h stays small and uniform across
/// sweep rows: nx = ceil(nodes_per_alpha * alpha * L) + base.
struct ResolutionRule {
  double nodes_per_alpha = 200.0;
  int base = 64;

  int resolve(double alpha, double length) const;
};

std::vector<SweepRow> sweep_alpha(const Domain& domain, const PucciPair& pair,
                                  std::span<const double> alphas,
                                  const ResolutionRule& rule, const EigenConfig& cfg);

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows);

struct ConvergenceRow {
  double h = 0.0;
  int nx = 0;
  double lambda = 0.0;
  std::optional<double> oracle_error;         // |lambda - lambda_oracle|
  std::optional<double> richardson_estimate;  // first-order extrapolated error
};

/// Eigen solves across resolutions; the error columns feed the
/// discretization error budget used by the strict-bound checks.
std::vector<ConvergenceRow> convergence_study(const Domain& domain, const PucciPair& pair,
                                              double alpha, std::span<const int> resolutions,
                                              const EigenConfig& cfg);

void write_convergence_csv(std::ostream& os, std::span<const ConvergenceRow> rows);

/// Relative discretization error estimate at the study's finest resolution:
/// oracle-based when available, Richardson otherwise.
double convergence_error_budget(std::span<const ConvergenceRow> rows);

/// Rows (delta, sup of |u| over K_delta) for a normalized eigenfunction.
std::vector<std::array<double, 2>> concentration_profile(const EigenResult& eig,
                                                         std::span<const double> deltas);

void write_concentration_csv(std::ostream& os,
                             std::span<const std::array<double, 2>> rows);

struct BlowupRow {
  double t = 0.0;
  double value = 0.0;
  double reference = 0.0;  // e^{-t}
};

/// Samples the eigenfunction along the inward lattice direction from its
/// boundary argmax at rescaled depths t = alpha * depth, t in [0, 2],
/// against the limiting boundary-layer profile e^{-t}.
std::vector<BlowupRow> blowup_profile(const EigenResult& eig, double alpha);

void write_blowup_csv(std::ostream& os, std::span<const BlowupRow> rows);

/// Linear interpolation of the blow-up profile at an arbitrary rescaled
/// depth t between the native rows.
double blowup_value_at(std::span<const BlowupRow> rows, double t);

struct LiouvilleResult {
  double sup_error = 0.0;      // over [0, T/2] against the exact profile
  double boundary_value = 0.0; // computed u(0)
  double boundary_exact = 0.0; // sqrt(A/gamma)
  ScalarField u;
};

/// Truncated half-space check: solve M+(u'') - gamma u = 0 on [0, T] with
/// flux datum du/dn = 1 at x = 0 and the exact profile value as Dirichlet
/// closure at x = T; compare against the bounded half-space solution.
/// Requires T >= 10 sqrt(A/gamma).
LiouvilleResult liouville_check(const PucciPair& pair, double gamma, double T, int n);

void write_liouville_csv(std::ostream& os, const PucciPair& pair, double gamma,
                         double T, int n, const LiouvilleResult& r);

/// Verifies the truncated half-space comparison principle: a larger
/// boundary datum produces a pointwise larger solution, identical data give
/// identical solutions, and a zero datum gives the zero solution.
bool comparison_sanity(const PucciPair& pair, double gamma, double T, int n);

/// 17-significant-digit formatting shared by every CSV writer.
std::string g17(double v);

}  // namespace pucci
