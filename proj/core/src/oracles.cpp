#include "pucci/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace pucci {

double transcendental_root(double alpha, double halflength) {
  if (!(alpha > 0.0) || !(halflength > 0.0)) {
    throw std::invalid_argument("transcendental_root requires alpha > 0 and halflength > 0");
  }
  const auto f = [&](double mu) { return mu * std::tanh(mu * halflength) - alpha; };

  // f(alpha) < 0 since tanh < 1; expand the upper end until the sign flips
  double lo = alpha;
  double hi = 2.0 * alpha + 2.0 / halflength;
  while (f(hi) < 0.0) hi *= 2.0;

  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval collapsed to adjacent doubles
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

OracleResult oracle_interval(const PucciPair& pair, double alpha, double L, Op which) {
  if (!(alpha > 0.0) || !(L > 0.0)) {
    throw std::invalid_argument("oracle_interval requires alpha > 0 and L > 0");
  }
  const double mu = transcendental_root(alpha, 0.5 * L);
  OracleResult r;
  r.mu_root = mu;
  const double coeff = which == Op::plus ? pair.A : pair.a;
  r.lambda = -coeff * mu * mu;
  const double sign = which == Op::plus ? 1.0 : -1.0;
  const double denom = std::cosh(0.5 * mu * L);
  r.profile = [mu, L, sign, denom](double x) {
    return sign * std::cosh(mu * (x - 0.5 * L)) / denom;
  };
  return r;
}

double oracle_rectangle_linear(double alpha, double Lx, double Ly, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("oracle_rectangle_linear requires sigma > 0");
  const double mux = transcendental_root(alpha, 0.5 * Lx);
  const double muy = transcendental_root(alpha, 0.5 * Ly);
  return -sigma * (mux * mux + muy * muy);
}

double HalfspaceProfile::value(double xn) const {
  return sign * boundary_value * std::exp(-decay_rate * xn);
}

double HalfspaceProfile::derivative(double xn) const {
  return -decay_rate * value(xn);
}

double HalfspaceProfile::second_derivative(double xn) const {
  return decay_rate * decay_rate * value(xn);
}

HalfspaceProfile halfspace_profile(double gamma, double coeff, Op sign) {
  if (!(gamma > 0.0) || !(coeff > 0.0)) {
    throw std::invalid_argument("halfspace_profile requires gamma > 0 and coeff > 0");
  }
  HalfspaceProfile p;
  p.boundary_value = std::sqrt(coeff / gamma);
  p.decay_rate = std::sqrt(gamma / coeff);
  p.sign = sign == Op::plus ? 1.0 : -1.0;
  return p;
}

double ExpSubsolution::value(double x1) const { return std::exp(alpha * x1); }

double ExpSubsolution::pucci_plus_value(double x1, double A) const {
  return A * alpha * alpha * value(x1);
}

ExpSubsolution explicit_subsolution_exp(double alpha) { return ExpSubsolution{alpha}; }

}  // namespace pucci
