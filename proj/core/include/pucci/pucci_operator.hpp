#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace pucci {

/// Ellipticity bounds 0 < a <= A shared by the extremal operators
/// M+ (sup of tr(sigma M) over a*I <= sigma <= A*I) and M- (inf).
struct PucciPair {
  double a;
  double A;

  PucciPair(double a_, double A_);
};

/// Selects between the two extremal operators.
enum class Op { plus, minus };

/// Symmetric 2x2 matrix stored by its upper triangle.
struct SymMat2 {
  double m11 = 0.0;
  double m12 = 0.0;
  double m22 = 0.0;
};

/// Eigenvalues of m, ascending. Closed form via trace and discriminant.
std::pair<double, double> eigs_sym2(const SymMat2& m);

/// M+ from the spectrum: A * sum of positive eigenvalues + a * sum of
/// negative ones.
double pucci_plus_from_eigs(std::span<const double> eigs, const PucciPair& pair);

/// M- from the spectrum: a * sum of positive eigenvalues + A * sum of
/// negative ones.
double pucci_minus_from_eigs(std::span<const double> eigs, const PucciPair& pair);

double pucci_plus(const SymMat2& m, const PucciPair& pair);
double pucci_minus(const SymMat2& m, const PucciPair& pair);

/// Coefficient the extremal operator assigns to a second-derivative value d:
/// plus takes A on d >= 0 and a on d < 0; minus swaps them.
inline double extremal_coefficient(double d, const PucciPair& pair, Op op) {
  if (op == Op::plus) return d >= 0.0 ? pair.A : pair.a;
  return d >= 0.0 ? pair.a : pair.A;
}

/// Monte-Carlo lower bound on the supremum defining M+: samples admissible
/// sigma = Q^T diag(s1, s2) Q with s_i uniform in [a, A] and Q a rotation of
/// uniform angle, and returns the largest tr(sigma m) observed. Converges to
/// pucci_plus(m) from below as nsamples grows because the extremal sigma
/// shares eigenvectors with m.
double pucci_sup_sample_oracle(const SymMat2& m, const PucciPair& pair,
                               std::int64_t nsamples, std::uint64_t seed);

}  // namespace pucci
