#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pucci/oracles.hpp"

using namespace pucci;

TEST_CASE("transcendental root") {
  SUBCASE("small-alpha limit mu^2 -> alpha/l") {
    const double mu = transcendental_root(1e-6, 0.5);
    CHECK(mu == doctest::Approx(std::sqrt(2e-6)).epsilon(1e-3));
  }

  SUBCASE("mu tanh(mu) = 1") {
    const double mu = transcendental_root(1.0, 1.0);
    CHECK(mu == doctest::Approx(1.19968).epsilon(1e-5));
    CHECK(std::abs(mu * std::tanh(mu) - 1.0) <= 1e-13 * 2.0);
  }

  SUBCASE("saturation at large alpha") {
    const double mu = transcendental_root(16.0, 0.5);
    CHECK(mu > 16.0);
    CHECK(mu - 16.0 <= 1e-5);
  }

  SUBCASE("residual bound on sampled inputs") {
    for (double alpha : {0.01, 0.5, 2.0, 7.0, 30.0}) {
      for (double l : {0.1, 0.5, 1.0, 4.0}) {
        const double mu = transcendental_root(alpha, l);
        // tanh < 1 forces mu > alpha; once tanh saturates to 1 in double
        // precision the gap is below one ulp
        CHECK(mu >= alpha);
        if (alpha * l < 15.0) CHECK(mu > alpha);
        CHECK(std::abs(mu * std::tanh(mu * l) - alpha) <= 1e-13 * (1.0 + alpha));
      }
    }
  }

  SUBCASE("monotone in alpha, antitone in halflength") {
    double prev = 0.0;
    for (double alpha : {0.5, 1.0, 2.0, 4.0}) {
      const double mu = transcendental_root(alpha, 0.5);
      CHECK(mu > prev);
      prev = mu;
    }
    prev = 1e300;
    for (double l : {0.25, 0.5, 1.0, 2.0}) {
      const double mu = transcendental_root(2.0, l);
      CHECK(mu < prev);
      prev = mu;
    }
  }

  SUBCASE("input validation") {
    CHECK_THROWS_AS(transcendental_root(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(transcendental_root(1.0, 0.0), std::invalid_argument);
  }
}

TEST_CASE("interval oracle") {
  const PucciPair pair(1.0, 4.0);
  const OracleResult plus = oracle_interval(pair, 4.0, 1.0, Op::plus);
  const OracleResult minus = oracle_interval(pair, 4.0, 1.0, Op::minus);

  const double mu = transcendental_root(4.0, 0.5);
  CHECK(plus.mu_root == mu);
  CHECK(plus.lambda == -4.0 * mu * mu);
  CHECK(minus.lambda == -mu * mu);
  // shared root: the ratio is A/a exactly
  CHECK(plus.lambda / minus.lambda == 4.0);

  // profile normalized to 1 on the boundary, symmetric, smallest mid-domain
  CHECK(plus.profile(0.0) == 1.0);
  CHECK(plus.profile(1.0) == 1.0);
  CHECK(plus.profile(0.25) == doctest::Approx(plus.profile(0.75)).epsilon(1e-14));
  CHECK(plus.profile(0.5) < plus.profile(0.25));
  CHECK(minus.profile(0.0) == -1.0);
}

TEST_CASE("strict bound and limit ratio") {
  const PucciPair pair(1.0, 4.0);
  double prev_ratio = 1e300;
  for (double alpha : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    const OracleResult o = oracle_interval(pair, alpha, 1.0, Op::plus);
    // lambda+ < -A alpha^2, i.e. (mu*/alpha)^2 > 1
    CHECK(o.lambda < -pair.A * alpha * alpha);
    const double ratio = o.lambda / (-alpha * alpha);
    CHECK(ratio > pair.A);
    CHECK(ratio < prev_ratio);  // decreasing toward A
    prev_ratio = ratio;
  }
  CHECK(prev_ratio == doctest::Approx(4.0).epsilon(1e-5));  // nearly saturated at 16
}

TEST_CASE("rectangle linear oracle") {
  const double mu = transcendental_root(2.0, 0.5);
  CHECK(oracle_rectangle_linear(2.0, 1.0, 1.0, 1.0) ==
        doctest::Approx(-2.0 * mu * mu).epsilon(1e-14));
  const double mux = transcendental_root(3.0, 0.5);
  const double muy = transcendental_root(3.0, 1.0);
  CHECK(oracle_rectangle_linear(3.0, 1.0, 2.0, 2.5) ==
        doctest::Approx(-2.5 * (mux * mux + muy * muy)).epsilon(1e-14));
}

TEST_CASE("halfspace profile") {
  SUBCASE("sharp case gamma = A") {
    const HalfspaceProfile p = halfspace_profile(1.0, 1.0, Op::plus);
    CHECK(p.boundary_value == 1.0);
    CHECK(p.decay_rate == 1.0);
    CHECK(p.value(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  }

  SUBCASE("gamma = 2, A = 1") {
    const HalfspaceProfile p = halfspace_profile(2.0, 1.0, Op::plus);
    CHECK(p.boundary_value == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(p.decay_rate == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  }

  SUBCASE("normalized flux and ODE residual") {
    for (double gamma : {0.5, 1.0, 2.0, 4.0}) {
      for (double coeff : {1.0, 3.0}) {
        const HalfspaceProfile p = halfspace_profile(gamma, coeff, Op::plus);
        CHECK(-p.derivative(0.0) == doctest::Approx(1.0).epsilon(1e-14));
        for (double x : {0.0, 0.3, 1.0, 2.7}) {
          const double res = coeff * p.second_derivative(x) - gamma * p.value(x);
          CHECK(std::abs(res) <= 1e-12);
        }
      }
    }
  }

  SUBCASE("minus sign negates") {
    const HalfspaceProfile p = halfspace_profile(2.0, 1.0, Op::minus);
    CHECK(p.value(0.0) < 0.0);
  }
}

TEST_CASE("explicit exponential subsolution") {
  const ExpSubsolution flat = explicit_subsolution_exp(0.0);
  CHECK(flat.value(0.7) == 1.0);
  CHECK(flat.pucci_plus_value(0.7, 4.0) == 0.0);

  const ExpSubsolution probe = explicit_subsolution_exp(1.0);
  CHECK(probe.pucci_plus_value(0.0, 4.0) == 4.0);
  CHECK(probe.pucci_plus_value(1.0, 4.0) == doctest::Approx(4.0 * std::exp(1.0)));
}
