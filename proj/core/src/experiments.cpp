#include "pucci/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace pucci {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string opt17(const std::optional<double>& v) { return v ? g17(*v) : std::string(); }

GridPtr grid_for(const Domain& domain, double alpha, const ResolutionRule& rule) {
  const int nx = rule.resolve(alpha, domain.lx);
  if (!domain.two_dim()) return build_grid(domain, nx);
  const double h = domain.lx / (nx - 1);
  const int ny = 1 + static_cast<int>(std::lround(domain.ly / h));
  return build_grid(domain, nx, ny);
}

std::optional<double> oracle_lambda(const Domain& domain, const PucciPair& pair,
                                    double alpha, Op which) {
  if (alpha <= 0.0) return std::nullopt;
  if (domain.kind == Domain::Kind::interval) {
    return oracle_interval(pair, alpha, domain.lx, which).lambda;
  }
  if (domain.kind == Domain::Kind::rectangle && pair.a == pair.A) {
    return oracle_rectangle_linear(alpha, domain.lx, domain.ly, pair.a);
  }
  return std::nullopt;
}

}  // namespace

int ResolutionRule::resolve(double alpha, double length) const {
  const int nx = static_cast<int>(std::ceil(nodes_per_alpha * alpha * length)) + base;
  return std::max(nx, 3);
}

std::vector<SweepRow> sweep_alpha(const Domain& domain, const PucciPair& pair,
                                  std::span<const double> alphas,
                                  const ResolutionRule& rule, const EigenConfig& cfg) {
  std::vector<double> sorted(alphas.begin(), alphas.end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<SweepRow> rows;
  rows.reserve(sorted.size());
  for (double alpha : sorted) {
    SweepRow row;
    row.alpha = alpha;
    try {
      const GridPtr grid = grid_for(domain, alpha, rule);
      row.nx = grid->nx();
      row.ny = grid->ny();
      row.h = grid->h();
      const StencilSet stencils = StencilSet::make(*grid, cfg.extended_stencils);

      const EigenResult plus = principal_eigen(Mode::positive, pair, alpha, grid, stencils, cfg);
      const EigenResult minus = principal_eigen(Mode::negative, pair, alpha, grid, stencils, cfg);
      row.lambda_plus = plus.lambda;
      row.lambda_minus = minus.lambda;
      if (alpha > 0.0) {
        row.ratio_plus = plus.lambda / (-alpha * alpha);
        row.ratio_minus = minus.lambda / (-alpha * alpha);
      }
      row.iters_plus = plus.power_iters;
      row.iters_minus = minus.power_iters;
      row.residual_plus = std::max(plus.interior_residual, plus.boundary_residual);
      row.residual_minus = std::max(minus.interior_residual, minus.boundary_residual);
      row.oracle_lambda_plus = oracle_lambda(domain, pair, alpha, Op::plus);
      row.oracle_lambda_minus = oracle_lambda(domain, pair, alpha, Op::minus);
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
  os << "alpha,h,nx,ny,lambda_plus,ratio_plus,lambda_minus,ratio_minus,"
        "iters_plus,iters_minus,residual_plus,residual_minus,"
        "oracle_lambda_plus,oracle_lambda_minus,status\n";
  for (const SweepRow& r : rows) {
    const bool ok = r.status == "ok";
    os << g17(r.alpha) << ',' << g17(r.h) << ',' << r.nx << ',' << r.ny << ','
       << (ok ? g17(r.lambda_plus) : std::string()) << ','
       << (ok ? g17(r.ratio_plus) : std::string()) << ','
       << (ok ? g17(r.lambda_minus) : std::string()) << ','
       << (ok ? g17(r.ratio_minus) : std::string()) << ',' << r.iters_plus << ','
       << r.iters_minus << ',' << (ok ? g17(r.residual_plus) : std::string()) << ','
       << (ok ? g17(r.residual_minus) : std::string()) << ','
       << opt17(r.oracle_lambda_plus) << ',' << opt17(r.oracle_lambda_minus) << ','
       << r.status << '\n';
  }
}

std::vector<ConvergenceRow> convergence_study(const Domain& domain, const PucciPair& pair,
                                              double alpha, std::span<const int> resolutions,
                                              const EigenConfig& cfg) {
  std::vector<int> sorted(resolutions.begin(), resolutions.end());
  std::sort(sorted.begin(), sorted.end());

  const std::optional<double> exact = oracle_lambda(domain, pair, alpha, Op::plus);

  std::vector<ConvergenceRow> rows;
  rows.reserve(sorted.size());
  for (int nx : sorted) {
    GridPtr grid;
    if (domain.two_dim()) {
      const double h = domain.lx / (nx - 1);
      const int ny = 1 + static_cast<int>(std::lround(domain.ly / h));
      grid = build_grid(domain, nx, ny);
    } else {
      grid = build_grid(domain, nx);
    }
    const StencilSet stencils = StencilSet::make(*grid, cfg.extended_stencils);
    const EigenResult eig = principal_eigen(Mode::positive, pair, alpha, grid, stencils, cfg);

    ConvergenceRow row;
    row.h = grid->h();
    row.nx = nx;
    row.lambda = eig.lambda;
    if (exact) row.oracle_error = std::abs(eig.lambda - *exact);
    rows.push_back(row);
  }

  // first-order Richardson: E_k ~ |lambda_k - lambda_{k+1}| * r / (r - 1)
  for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
    const double r = rows[k].h / rows[k + 1].h;
    rows[k].richardson_estimate =
        std::abs(rows[k].lambda - rows[k + 1].lambda) * r / (r - 1.0);
  }
  return rows;
}

void write_convergence_csv(std::ostream& os, std::span<const ConvergenceRow> rows) {
  os << "h,nx,lambda,error_vs_oracle,richardson_estimate\n";
  for (const ConvergenceRow& r : rows) {
    os << g17(r.h) << ',' << r.nx << ',' << g17(r.lambda) << ',' << opt17(r.oracle_error)
       << ',' << opt17(r.richardson_estimate) << '\n';
  }
}

double convergence_error_budget(std::span<const ConvergenceRow> rows) {
  if (rows.empty()) throw std::invalid_argument("convergence_error_budget: no rows");
  const ConvergenceRow& finest = rows.back();
  if (finest.oracle_error) return *finest.oracle_error / std::abs(finest.lambda);
  // fall back to the Richardson estimate of the finest level that has one
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    if (it->richardson_estimate) return *it->richardson_estimate / std::abs(it->lambda);
  }
  throw std::invalid_argument("convergence_error_budget: need at least two rows");
}

std::vector<std::array<double, 2>> concentration_profile(const EigenResult& eig,
                                                         std::span<const double> deltas) {
  std::vector<std::array<double, 2>> rows;
  rows.reserve(deltas.size());
  for (double delta : deltas) {
    rows.push_back({delta, restrict_sup(eig.u, delta)});
  }
  return rows;
}

void write_concentration_csv(std::ostream& os,
                             std::span<const std::array<double, 2>> rows) {
  os << "delta,sup_abs\n";
  for (const auto& r : rows) os << g17(r[0]) << ',' << g17(r[1]) << '\n';
}

std::vector<BlowupRow> blowup_profile(const EigenResult& eig, double alpha) {
  const Grid& g = *eig.u.grid;
  if (!(alpha > 0.0)) throw std::invalid_argument("blowup_profile requires alpha > 0");
  if (2.0 / alpha >= 0.5 * g.domain().min_length()) {
    throw std::invalid_argument(
        "blowup_profile requires 2/alpha below the domain half-width");
  }

  int argmax = 0;
  for (int node = 1; node < eig.u.size(); ++node) {
    if (std::abs(eig.u.values[node]) > std::abs(eig.u.values[argmax])) argmax = node;
  }
  if (!g.is_boundary(argmax)) {
    throw std::invalid_argument("blowup_profile: eigenfunction argmax is not on the boundary");
  }

  // inward lattice step opposite the outward normal
  const auto n = g.normal(argmax);
  const int di = n[0] > 0.5 ? -1 : (n[0] < -0.5 ? 1 : 0);
  const int dj = n[1] > 0.5 ? -1 : (n[1] < -0.5 ? 1 : 0);
  const double step_len = g.h() * std::sqrt(double(di * di + dj * dj));
  const double peak = std::abs(eig.u.values[argmax]);

  std::vector<BlowupRow> rows;
  int node = argmax;
  for (int k = 0;; ++k) {
    const double t = alpha * k * step_len;
    if (t > 2.0 + 1e-12) break;
    rows.push_back({t, std::abs(eig.u.values[node]) / peak, std::exp(-t)});
    node = g.neighbor(node, di, dj);
    if (node < 0) break;
  }
  return rows;
}

double blowup_value_at(std::span<const BlowupRow> rows, double t) {
  if (rows.empty()) throw std::invalid_argument("blowup_value_at: empty profile");
  if (t <= rows.front().t) return rows.front().value;
  for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
    if (t <= rows[k + 1].t) {
      const double w = (t - rows[k].t) / (rows[k + 1].t - rows[k].t);
      return (1.0 - w) * rows[k].value + w * rows[k + 1].value;
    }
  }
  return rows.back().value;
}

void write_blowup_csv(std::ostream& os, std::span<const BlowupRow> rows) {
  os << "t,value,reference\n";
  for (const BlowupRow& r : rows) {
    os << g17(r.t) << ',' << g17(r.value) << ',' << g17(r.reference) << '\n';
  }
}

namespace {

/// Truncated half-space solve with boundary datum du/dn = k at x = 0 and
/// Dirichlet closure k * profile(T).
ScalarField solve_truncated(const PucciPair& pair, double gamma, double T, int n,
                            double datum) {
  const GridPtr grid = build_grid(Domain::halfline(T), n);
  const StencilSet stencils = StencilSet::make(*grid);
  const HalfspaceProfile profile = halfspace_profile(gamma, pair.A, Op::plus);

  ShiftedProblem p{pair, Op::plus, 0.0, gamma, ScalarField(grid, 0.0),
                   datum, true, datum * profile.value(T)};
  return howard_solve(p, *grid, stencils, 1e-12, 50);
}

}  // namespace

LiouvilleResult liouville_check(const PucciPair& pair, double gamma, double T, int n) {
  if (!(gamma > 0.0)) throw std::invalid_argument("liouville_check requires gamma > 0");
  if (T < 10.0 * std::sqrt(pair.A / gamma)) {
    throw std::invalid_argument("liouville_check requires T >= 10 sqrt(A/gamma)");
  }
  const HalfspaceProfile profile = halfspace_profile(gamma, pair.A, Op::plus);

  LiouvilleResult res;
  res.u = solve_truncated(pair, gamma, T, n, 1.0);
  const Grid& g = *res.u.grid;
  for (int node = 0; node < res.u.size(); ++node) {
    if (g.x(node) > 0.5 * T) continue;
    res.sup_error = std::max(res.sup_error,
                             std::abs(res.u.values[node] - profile.value(g.x(node))));
  }
  res.boundary_value = res.u.values[0];
  res.boundary_exact = profile.boundary_value;
  return res;
}

void write_liouville_csv(std::ostream& os, const PucciPair& pair, double gamma,
                         double T, int n, const LiouvilleResult& r) {
  os << "gamma,a,A,T,n,boundary_value,boundary_exact,sup_error_half\n";
  os << g17(gamma) << ',' << g17(pair.a) << ',' << g17(pair.A) << ',' << g17(T) << ','
     << n << ',' << g17(r.boundary_value) << ',' << g17(r.boundary_exact) << ','
     << g17(r.sup_error) << '\n';
}

bool comparison_sanity(const PucciPair& pair, double gamma, double T, int n) {
  const ScalarField u1 = solve_truncated(pair, gamma, T, n, 1.0);
  const ScalarField u1b = solve_truncated(pair, gamma, T, n, 1.0);
  const ScalarField u11 = solve_truncated(pair, gamma, T, n, 1.1);
  const ScalarField u0 = solve_truncated(pair, gamma, T, n, 0.0);

  for (int i = 0; i < u1.size(); ++i) {
    if (u11.values[i] < u1.values[i]) return false;       // datum 1.1 above datum 1
    if (u1b.values[i] != u1.values[i]) return false;      // identical data, identical run
    if (u0.values[i] != 0.0) return false;                // zero datum, zero solution
    if (u0.values[i] > u1.values[i]) return false;
  }
  return true;
}

}  // namespace pucci
