#pragma once

#include <functional>

#include "pucci/pucci_operator.hpp"

namespace pucci {

/// Root mu* of mu * tanh(mu * halflength) = alpha, found by bracket
/// expansion from [alpha, 2 alpha + 2/halflength] and bisection. Since
/// tanh < 1 the root satisfies mu* > alpha.
double transcendental_root(double alpha, double halflength);

/// Closed-form reference eigenpair with an evaluable profile along the
/// 1D axis.
struct OracleResult {
  double lambda = 0.0;
  double mu_root = 0.0;
  std::function<double(double)> profile;
};

/// Exact 1D interval eigenpair: lambda+ = -A mu*^2 and lambda- = -a mu*^2
/// share the root mu* = transcendental_root(alpha, L/2); the profile is
/// cosh(mu*(x - L/2)) / cosh(mu* L / 2), negated for the minus mode.
OracleResult oracle_interval(const PucciPair& pair, double alpha, double L, Op which);

/// Exact eigenvalue of the linear case a = A = sigma on a rectangle:
/// -sigma (mu_x^2 + mu_y^2) with per-axis roots; the eigenfunction is the
/// product of the two cosh profiles.
double oracle_rectangle_linear(double alpha, double Lx, double Ly, double sigma);

/// Bounded half-space solution sqrt(coeff/gamma) * exp(-sqrt(gamma/coeff) x)
/// of coeff * v'' - gamma v = 0 with -v'(0) = 1; negated for the minus sign.
struct HalfspaceProfile {
  double boundary_value = 0.0;
  double decay_rate = 0.0;
  double sign = 1.0;

  double value(double xn) const;
  double derivative(double xn) const;
  double second_derivative(double xn) const;
};

HalfspaceProfile halfspace_profile(double gamma, double coeff, Op sign);

/// The explicit subsolution v = e^{alpha x1}, whose Hessian is the PSD
/// rank-one matrix alpha^2 v e1 (x) e1, so M+(D^2 v) = A alpha^2 v exactly.
struct ExpSubsolution {
  double alpha = 0.0;

  double value(double x1) const;
  double pucci_plus_value(double x1, double A) const;
};

ExpSubsolution explicit_subsolution_exp(double alpha);

}  // namespace pucci
