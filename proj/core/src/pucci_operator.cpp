#include "pucci/pucci_operator.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace pucci {

PucciPair::PucciPair(double a_, double A_) : a(a_), A(A_) {
  if (!(a > 0.0) || !(a <= A)) {
    throw std::invalid_argument("PucciPair requires 0 < a <= A");
  }
}

std::pair<double, double> eigs_sym2(const SymMat2& m) {
  const double mean = 0.5 * (m.m11 + m.m22);
  const double half_diff = 0.5 * (m.m11 - m.m22);
  const double disc = std::hypot(half_diff, m.m12);
  return {mean - disc, mean + disc};
}

double pucci_plus_from_eigs(std::span<const double> eigs, const PucciPair& pair) {
  double pos = 0.0, neg = 0.0;
  for (double e : eigs) {
    if (e > 0.0) pos += e;
    else neg += e;
  }
  return pair.A * pos + pair.a * neg;
}

double pucci_minus_from_eigs(std::span<const double> eigs, const PucciPair& pair) {
  double pos = 0.0, neg = 0.0;
  for (double e : eigs) {
    if (e > 0.0) pos += e;
    else neg += e;
  }
  return pair.a * pos + pair.A * neg;
}

double pucci_plus(const SymMat2& m, const PucciPair& pair) {
  const auto [e1, e2] = eigs_sym2(m);
  const double eigs[2] = {e1, e2};
  return pucci_plus_from_eigs(eigs, pair);
}

double pucci_minus(const SymMat2& m, const PucciPair& pair) {
  const auto [e1, e2] = eigs_sym2(m);
  const double eigs[2] = {e1, e2};
  return pucci_minus_from_eigs(eigs, pair);
}

double pucci_sup_sample_oracle(const SymMat2& m, const PucciPair& pair,
                               std::int64_t nsamples, std::uint64_t seed) {
  if (nsamples < 1) {
    throw std::invalid_argument("pucci_sup_sample_oracle requires nsamples >= 1");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> eig_dist(pair.a, pair.A);
  std::uniform_real_distribution<double> angle_dist(0.0, std::acos(-1.0));

  double best = -std::numeric_limits<double>::infinity();
  for (std::int64_t k = 0; k < nsamples; ++k) {
    const double s1 = eig_dist(rng);
    const double s2 = eig_dist(rng);
    const double theta = angle_dist(rng);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    // sigma = Q^T diag(s1, s2) Q with Q the rotation by theta
    const double sig11 = s1 * c * c + s2 * s * s;
    const double sig22 = s1 * s * s + s2 * c * c;
    const double sig12 = (s1 - s2) * c * s;
    const double tr = sig11 * m.m11 + 2.0 * sig12 * m.m12 + sig22 * m.m22;
    if (tr > best) best = tr;
  }
  return best;
}

}  // namespace pucci
