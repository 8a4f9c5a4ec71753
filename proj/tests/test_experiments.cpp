#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pucci/experiments.hpp"

using namespace pucci;

TEST_CASE("resolution rule") {
  const ResolutionRule rule;
  CHECK(rule.resolve(16.0, 1.0) == 3264);
  CHECK(rule.resolve(16.0, 1.0) >= 10 * 16 + 64);
  CHECK(rule.resolve(0.01, 1.0) >= 3);
  // alpha h stays well under the 0.1 limit
  for (double alpha : {0.5, 2.0, 8.0, 16.0}) {
    const int nx = rule.resolve(alpha, 1.0);
    CHECK(alpha / (nx - 1) <= 0.1);
  }
}

TEST_CASE("1D sweep against the oracle") {
  const PucciPair pair(1.0, 4.0);
  const double alphas[] = {4.0, 1.0, 2.0};  // unsorted on purpose
  const auto rows = sweep_alpha(Domain::interval(1.0), pair, alphas, ResolutionRule{},
                                EigenConfig{});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].alpha == 1.0);  // sorted ascending
  CHECK(rows[2].alpha == 4.0);

  double prev_ratio_plus = 1e300, prev_ratio_minus = 1e300;
  double prev_lambda = 1.0;
  for (const SweepRow& r : rows) {
    CHECK(r.status == "ok");
    CHECK(r.ratio_plus == r.lambda_plus / (-r.alpha * r.alpha));
    CHECK(r.ratio_minus == r.lambda_minus / (-r.alpha * r.alpha));
    CHECK(r.ratio_plus > pair.A);
    CHECK(r.ratio_minus > pair.a);
    CHECK(r.ratio_plus < prev_ratio_plus);
    CHECK(r.ratio_minus < prev_ratio_minus);
    CHECK(r.lambda_plus < prev_lambda);
    REQUIRE(r.oracle_lambda_plus.has_value());
    REQUIRE(r.oracle_lambda_minus.has_value());
    CHECK(std::abs(r.lambda_plus - *r.oracle_lambda_plus) /
              std::abs(*r.oracle_lambda_plus) <= 1e-2);
    CHECK(std::abs(r.lambda_minus - *r.oracle_lambda_minus) /
              std::abs(*r.oracle_lambda_minus) <= 1e-2);
    CHECK(r.lambda_plus / r.lambda_minus == doctest::Approx(4.0).epsilon(0.02));
    CHECK(r.iters_plus > 0);
    prev_ratio_plus = r.ratio_plus;
    prev_ratio_minus = r.ratio_minus;
    prev_lambda = r.lambda_plus;
  }
}

TEST_CASE("sweep errors stay within the convergence-study model") {
  // the study calibrates a first-order error model E(alpha, h) ~ C h mu*(alpha);
  // every sweep row with an oracle must sit within 3x of it
  const PucciPair pair(1.0, 4.0);
  const double alpha_cs = 4.0;
  const int resolutions[] = {256, 512, 1024};
  const auto study = convergence_study(Domain::interval(1.0), pair, alpha_cs,
                                       resolutions, EigenConfig{});
  const double budget_rel = convergence_error_budget(study);  // at h_cs
  const double h_cs = study.back().h;
  const double mu_cs = transcendental_root(alpha_cs, 0.5);

  const double alphas[] = {1.0, 2.0, 4.0};
  const auto rows = sweep_alpha(Domain::interval(1.0), pair, alphas, ResolutionRule{},
                                EigenConfig{});
  for (const SweepRow& r : rows) {
    REQUIRE(r.oracle_lambda_plus.has_value());
    const double err_rel = std::abs(r.lambda_plus - *r.oracle_lambda_plus) /
                           std::abs(*r.oracle_lambda_plus);
    const double model_rel =
        budget_rel * (r.h / h_cs) * (transcendental_root(r.alpha, 0.5) / mu_cs);
    CHECK(err_rel <= 3.0 * model_rel);
  }
}

TEST_CASE("failed sweep rows are recorded, not fatal") {
  const PucciPair pair(1.0, 4.0);
  const double alphas[] = {1.0, -2.0};
  const auto rows = sweep_alpha(Domain::interval(1.0), pair, alphas, ResolutionRule{},
                                EigenConfig{});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].alpha == -2.0);
  CHECK(rows[0].status.rfind("error:", 0) == 0);
  CHECK(rows[1].status == "ok");
}

TEST_CASE("sweep csv format") {
  const PucciPair pair(1.0, 4.0);
  const double alphas[] = {1.0};
  const auto rows = sweep_alpha(Domain::interval(1.0), pair, alphas, ResolutionRule{},
                                EigenConfig{});
  std::ostringstream os;
  write_sweep_csv(os, rows);
  std::istringstream is(os.str());
  std::string header, row;
  std::getline(is, header);
  CHECK(header ==
        "alpha,h,nx,ny,lambda_plus,ratio_plus,lambda_minus,ratio_minus,"
        "iters_plus,iters_minus,residual_plus,residual_minus,"
        "oracle_lambda_plus,oracle_lambda_minus,status");
  std::getline(is, row);
  int commas = 0;
  for (char c : row) commas += c == ',';
  CHECK(commas == 14);
  CHECK(row.substr(row.size() - 2) == "ok");
}

TEST_CASE("1D convergence study is first order") {
  const PucciPair pair(1.0, 4.0);
  const int resolutions[] = {128, 256, 512, 1024};
  const auto rows = convergence_study(Domain::interval(1.0), pair, 4.0, resolutions,
                                      EigenConfig{});
  REQUIRE(rows.size() == 4);
  for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
    REQUIRE(rows[k].oracle_error.has_value());
    const double ratio = *rows[k].oracle_error / *rows[k + 1].oracle_error;
    CHECK(ratio >= 1.6);
    CHECK(ratio <= 2.6);
    // richardson estimate agrees with the oracle error within a factor 3
    REQUIRE(rows[k].richardson_estimate.has_value());
    const double rich = *rows[k].richardson_estimate;
    CHECK(rich <= 3.0 * *rows[k].oracle_error);
    CHECK(*rows[k].oracle_error <= 3.0 * rich);
  }
  const double budget = convergence_error_budget(rows);
  CHECK(budget > 0.0);
  CHECK(budget <= 1e-2);
}

TEST_CASE("2D linear convergence decreases monotonically") {
  const PucciPair pair(1.0, 1.0);
  const int resolutions[] = {33, 65, 129};
  const auto rows = convergence_study(Domain::rectangle(1.0, 1.0), pair, 2.0,
                                      resolutions, EigenConfig{});
  REQUIRE(rows.size() == 3);
  double prev = 1e300;
  for (const ConvergenceRow& r : rows) {
    REQUIRE(r.oracle_error.has_value());
    CHECK(*r.oracle_error < prev);
    prev = *r.oracle_error;
  }
}

TEST_CASE("2D Pucci case converges under refinement without an oracle") {
  // no closed form exists for a < A in 2D: the study reports Richardson
  // estimates and the eigenvalue stays below the exponential-subsolution
  // bound
  const PucciPair pair(1.0, 4.0);
  const double alpha = 2.0;
  const int resolutions[] = {25, 49, 97};
  const auto rows = convergence_study(Domain::rectangle(1.0, 1.0), pair, alpha,
                                      resolutions, EigenConfig{});
  REQUIRE(rows.size() == 3);
  for (const ConvergenceRow& r : rows) {
    CHECK(!r.oracle_error.has_value());
    CHECK(r.lambda < -pair.A * alpha * alpha);
  }
  REQUIRE(rows[0].richardson_estimate.has_value());
  REQUIRE(rows[1].richardson_estimate.has_value());
  // successive differences shrink under refinement
  CHECK(*rows[1].richardson_estimate < *rows[0].richardson_estimate);
  CHECK(convergence_error_budget(rows) > 0.0);
}

TEST_CASE("concentration profile") {
  const PucciPair pair(1.0, 4.0);
  const ResolutionRule rule;

  double prev = 1e300;
  for (double alpha : {4.0, 8.0, 16.0}) {
    const GridPtr g = build_grid(Domain::interval(1.0), rule.resolve(alpha, 1.0));
    const StencilSet st = StencilSet::make(*g);
    const EigenResult eig = principal_eigen(Mode::positive, pair, alpha, g, st);
    const double deltas[] = {0.0, 0.1, 0.25};
    const auto rows = concentration_profile(eig, deltas);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0][1] == doctest::Approx(1.0).epsilon(1e-12));  // delta = 0: sup norm
    CHECK(rows[1][1] >= rows[2][1]);                           // non-increasing in delta
    if (alpha == 16.0) CHECK(rows[2][1] <= 0.05);
    CHECK(rows[2][1] < prev);  // decreasing across increasing alpha
    prev = rows[2][1];
  }
}

TEST_CASE("blow-up profile against e^{-t}") {
  const PucciPair pair(1.0, 4.0);
  const double alpha = 16.0;
  const ResolutionRule rule;
  const GridPtr g = build_grid(Domain::interval(1.0), rule.resolve(alpha, 1.0));
  const StencilSet st = StencilSet::make(*g);
  const EigenResult eig = principal_eigen(Mode::positive, pair, alpha, g, st);

  const auto rows = blowup_profile(eig, alpha);
  REQUIRE(!rows.empty());
  CHECK(rows.front().t == 0.0);
  CHECK(rows.front().value == 1.0);
  CHECK(rows.back().t <= 2.0 + 1e-12);
  CHECK(rows.back().t >= 1.9);

  double prev = 2.0;
  for (const BlowupRow& r : rows) {
    CHECK(std::abs(r.value - r.reference) <= 0.05 * r.reference);
    CHECK(r.value < prev);  // monotone decay
    prev = r.value;
  }

  // interpolation helper stays within the neighboring rows
  const double mid = blowup_value_at(rows, 0.5 * (rows[3].t + rows[4].t));
  CHECK(mid <= rows[3].value);
  CHECK(mid >= rows[4].value);
}

TEST_CASE("liouville truncated half-space check") {
  SUBCASE("gamma = 2, A = 1") {
    const LiouvilleResult r = liouville_check(PucciPair(1.0, 1.0), 2.0, 10.0, 2000);
    CHECK(r.sup_error <= 1e-3);
    CHECK(r.boundary_exact == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(std::abs(r.boundary_value - r.boundary_exact) <= 1e-3);
  }

  SUBCASE("liouville threshold boundary values") {
    // gamma = A: boundary value 1; gamma = 4A: boundary value 1/2
    const LiouvilleResult r1 = liouville_check(PucciPair(1.0, 1.0), 1.0, 10.0, 2000);
    CHECK(std::abs(r1.boundary_value - 1.0) <= 1e-3);
    const LiouvilleResult r4 = liouville_check(PucciPair(1.0, 1.0), 4.0, 10.0, 2000);
    CHECK(std::abs(r4.boundary_value - 0.5) <= 1e-3);
  }

  SUBCASE("a Pucci pair takes the A-coefficient branch") {
    const LiouvilleResult r = liouville_check(PucciPair(1.0, 4.0), 2.0, 20.0, 4000);
    CHECK(r.boundary_exact == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(std::abs(r.boundary_value - r.boundary_exact) <= 1e-3);
  }

  SUBCASE("validation") {
    CHECK_THROWS_AS(liouville_check(PucciPair(1.0, 1.0), 0.0, 10.0, 100),
                    std::invalid_argument);
    // T below 10 sqrt(A/gamma)
    CHECK_THROWS_AS(liouville_check(PucciPair(1.0, 4.0), 1.0, 10.0, 100),
                    std::invalid_argument);
  }
}

TEST_CASE("comparison sanity on the truncated half-space") {
  CHECK(comparison_sanity(PucciPair(1.0, 1.0), 2.0, 10.0, 500));
  CHECK(comparison_sanity(PucciPair(1.0, 4.0), 2.0, 20.0, 500));
}

TEST_CASE("csv writers") {
  std::ostringstream os;
  const ConvergenceRow row{0.25, 5, -1.5, 0.01, std::nullopt};
  write_convergence_csv(os, std::span<const ConvergenceRow>(&row, 1));
  CHECK(os.str() == "h,nx,lambda,error_vs_oracle,richardson_estimate\n0.25,5,-1.5,0.01,\n");

  std::ostringstream os2;
  const std::array<double, 2> conc{0.25, 0.0625};
  write_concentration_csv(os2, std::span<const std::array<double, 2>>(&conc, 1));
  CHECK(os2.str() == "delta,sup_abs\n0.25,0.0625\n");
}
