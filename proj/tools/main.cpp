// Command-line driver: eigen solves, closed-form oracles, and the batch
// experiments, all emitting CSV with a provenance line echoing the full
// configuration. Exit codes: 0 success, 1 invalid configuration, 2 solver
// failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pucci/experiments.hpp"
#include "pucci/grid.hpp"
#include "pucci/oracles.hpp"
#include "pucci/solver.hpp"

namespace {

using namespace pucci;

struct CommonOpts {
  std::string domain = "interval";
  double L = 1.0;
  double Lx = 1.0;
  double Ly = 1.0;
  double a = 1.0;
  double A = 1.0;
  int nx = 0;  // 0: resolution rule
  int ny = 0;
  std::string mode = "positive";
  std::string stencils = "default";
  double tol_lambda = 1e-8;
  double residual_tol = 1e-10;
  int max_power_iters = 5000;
  std::uint64_t seed = 0;
  std::string out;
  bool dump_config = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_domain = true) {
  if (with_domain) {
    cmd->add_option("--domain", o.domain, "interval|rectangle")
        ->check(CLI::IsMember({"interval", "rectangle"}));
    cmd->add_option("--L", o.L, "interval length");
    cmd->add_option("--Lx", o.Lx, "rectangle x length");
    cmd->add_option("--Ly", o.Ly, "rectangle y length");
  }
  cmd->add_option("--a", o.a, "lower ellipticity bound");
  cmd->add_option("--A", o.A, "upper ellipticity bound");
  cmd->add_option("--nx", o.nx, "nodes along x (0: resolution rule)");
  cmd->add_option("--ny", o.ny, "nodes along y (0: match spacing)");
  cmd->add_option("--stencils", o.stencils, "default|extended")
      ->check(CLI::IsMember({"default", "extended"}));
  cmd->add_option("--tol-lambda", o.tol_lambda, "relative bracket-width tolerance");
  cmd->add_option("--residual-tol", o.residual_tol, "relative shifted-solve residual");
  cmd->add_option("--max-power-iters", o.max_power_iters, "power iteration budget");
  cmd->add_option("--seed", o.seed, "random-initialization seed (0: all-ones start)");
  cmd->add_option("--out", o.out, "output CSV path (default: stdout)");
  cmd->add_flag("--dump-config", o.dump_config, "echo the configuration and exit");
}

Domain make_domain(const CommonOpts& o) {
  if (o.domain == "rectangle") return Domain::rectangle(o.Lx, o.Ly);
  return Domain::interval(o.L);
}

EigenConfig make_config(const CommonOpts& o) {
  EigenConfig cfg;
  cfg.tol_lambda = o.tol_lambda;
  cfg.residual_tol = o.residual_tol;
  cfg.max_power_iters = o.max_power_iters;
  cfg.extended_stencils = o.stencils == "extended";
  cfg.random_init_seed = o.seed;
  return cfg;
}

GridPtr make_grid(const CommonOpts& o, const Domain& dom, double alpha) {
  const ResolutionRule rule;
  int nx = o.nx > 0 ? o.nx : rule.resolve(alpha, dom.lx);
  if (!dom.two_dim()) return build_grid(dom, nx);
  int ny = o.ny;
  if (ny <= 0) {
    const double h = dom.lx / (nx - 1);
    ny = 1 + static_cast<int>(std::lround(dom.ly / h));
  }
  return build_grid(dom, nx, ny);
}

std::string domain_config(const CommonOpts& o) {
  std::ostringstream s;
  if (o.domain == "rectangle") {
    s << "--domain rectangle --Lx " << g17(o.Lx) << " --Ly " << g17(o.Ly);
  } else {
    s << "--domain interval --L " << g17(o.L);
  }
  return s.str();
}

std::string common_config(const CommonOpts& o, bool with_domain = true) {
  std::ostringstream s;
  if (with_domain) s << domain_config(o) << ' ';
  s << "--a " << g17(o.a) << " --A " << g17(o.A);
  if (o.nx > 0) s << " --nx " << o.nx;
  if (o.ny > 0) s << " --ny " << o.ny;
  s << " --stencils " << o.stencils << " --tol-lambda " << g17(o.tol_lambda)
    << " --residual-tol " << g17(o.residual_tol) << " --max-power-iters "
    << o.max_power_iters << " --seed " << o.seed;
  return s.str();
}

/// Runs `body(stream, config_line)` against --out or stdout, prepending the
/// provenance line.
template <typename Body>
int emit(const CommonOpts& o, const std::string& config_line, Body&& body) {
  if (o.dump_config) {
    std::cout << config_line << '\n';
    return 0;
  }
  const std::string line = "# config: " + config_line + "\n";
  if (o.out.empty()) {
    std::cout << line;
    body(std::cout);
    return 0;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open output file " << o.out << '\n';
    return 1;
  }
  file << line;
  body(file);
  return 0;
}

std::string eigen_comment(const EigenResult& r) {
  std::ostringstream s;
  s << "# lambda: " << g17(r.lambda) << '\n'
    << "# cw_lo: " << g17(r.cw_lo) << '\n'
    << "# cw_hi: " << g17(r.cw_hi) << '\n'
    << "# power_iters: " << r.power_iters << '\n'
    << "# howard_iters_total: " << r.howard_iters_total << '\n'
    << "# interior_residual: " << g17(r.interior_residual) << '\n'
    << "# boundary_residual: " << g17(r.boundary_residual) << '\n';
  return s.str();
}

int run_cli(int argc, char** argv) {
  CLI::App app{"principal demi-eigenvalues of Pucci extremal operators under "
               "the Robin condition du/dn = alpha u"};
  app.require_subcommand(1);

  CommonOpts o;
  double alpha = 0.0;
  std::vector<double> alphas;
  std::vector<int> resolutions;
  std::vector<double> deltas;
  double gamma = 0.0;
  double T = 10.0;

  CLI::App* c_eigen = app.add_subcommand("eigen", "principal eigenpair on a grid");
  add_common(c_eigen, o);
  c_eigen->add_option("--alpha", alpha, "Robin coefficient")->required();
  c_eigen->add_option("--mode", o.mode, "positive|negative")
      ->check(CLI::IsMember({"positive", "negative"}));

  CLI::App* c_oracle = app.add_subcommand("oracle", "closed-form reference eigenvalues");
  add_common(c_oracle, o);
  c_oracle->add_option("--alpha", alpha, "Robin coefficient")->required();

  CLI::App* c_sweep = app.add_subcommand("sweep", "lambda(alpha) sweep as CSV rows");
  add_common(c_sweep, o);
  c_sweep->add_option("--alphas", alphas, "comma-separated alphas")
      ->required()
      ->delimiter(',');

  CLI::App* c_conv = app.add_subcommand("convergence", "h-refinement study");
  add_common(c_conv, o);
  c_conv->add_option("--alpha", alpha, "Robin coefficient")->required();
  c_conv->add_option("--resolutions", resolutions, "comma-separated node counts")
      ->required()
      ->delimiter(',');

  CLI::App* c_conc = app.add_subcommand("concentration", "sup over K_delta profile");
  add_common(c_conc, o);
  c_conc->add_option("--alpha", alpha, "Robin coefficient")->required();
  c_conc->add_option("--deltas", deltas, "comma-separated margins")
      ->required()
      ->delimiter(',');

  CLI::App* c_blow = app.add_subcommand("blowup", "rescaled boundary-layer profile");
  add_common(c_blow, o);
  c_blow->add_option("--alpha", alpha, "Robin coefficient")->required();

  CLI::App* c_liou = app.add_subcommand("liouville", "truncated half-space profile check");
  add_common(c_liou, o, /*with_domain=*/false);
  c_liou->add_option("--gamma", gamma, "zeroth-order coefficient")->required();
  c_liou->add_option("--T", T, "truncation length");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // prints help on stdout or the usage error on stderr
    return app.exit(e) == 0 ? 0 : 1;
  }

  const PucciPair pair(o.a, o.A);
  const EigenConfig cfg = make_config(o);

  if (app.got_subcommand(c_eigen)) {
    const Domain dom = make_domain(o);
    const GridPtr grid = make_grid(o, dom, alpha);
    const StencilSet stencils = StencilSet::make(*grid, cfg.extended_stencils);
    std::ostringstream cl;
    cl << "eigen " << common_config(o) << " --alpha " << g17(alpha) << " --mode " << o.mode;
    if (o.dump_config) return emit(o, cl.str(), [](std::ostream&) {});
    const Mode mode = o.mode == "negative" ? Mode::negative : Mode::positive;
    const EigenResult res = principal_eigen(mode, pair, alpha, grid, stencils, cfg);
    return emit(o, cl.str(), [&](std::ostream& os) {
      os << eigen_comment(res);
      write_field_csv(os, res.u);
    });
  }

  if (app.got_subcommand(c_oracle)) {
    std::ostringstream cl;
    cl << "oracle " << common_config(o) << " --alpha " << g17(alpha);
    if (o.domain == "rectangle") {
      if (o.a != o.A) {
        throw std::invalid_argument("rectangle oracle exists only for the linear case a = A");
      }
      const double mux = transcendental_root(alpha, 0.5 * o.Lx);
      const double muy = transcendental_root(alpha, 0.5 * o.Ly);
      const double lam = oracle_rectangle_linear(alpha, o.Lx, o.Ly, o.a);
      return emit(o, cl.str(), [&](std::ostream& os) {
        os << "mu_x,mu_y,lambda\n"
           << g17(mux) << ',' << g17(muy) << ',' << g17(lam) << '\n';
      });
    }
    const OracleResult plus = oracle_interval(pair, alpha, o.L, Op::plus);
    const OracleResult minus = oracle_interval(pair, alpha, o.L, Op::minus);
    return emit(o, cl.str(), [&](std::ostream& os) {
      os << "mu_root,lambda_plus,lambda_minus\n"
         << g17(plus.mu_root) << ',' << g17(plus.lambda) << ',' << g17(minus.lambda)
         << '\n';
    });
  }

  if (app.got_subcommand(c_sweep)) {
    const Domain dom = make_domain(o);
    std::ostringstream cl;
    cl << "sweep " << common_config(o) << " --alphas ";
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      cl << (i ? "," : "") << g17(alphas[i]);
    }
    if (o.dump_config) return emit(o, cl.str(), [](std::ostream&) {});
    ResolutionRule rule;
    if (o.nx > 0) {
      // fixed node count for every row
      rule.nodes_per_alpha = 0.0;
      rule.base = o.nx;
    }
    const auto rows = sweep_alpha(dom, pair, alphas, rule, cfg);
    int exit_code = 0;
    for (const SweepRow& r : rows) {
      if (r.status != "ok") exit_code = 2;
    }
    const int rc = emit(o, cl.str(), [&](std::ostream& os) { write_sweep_csv(os, rows); });
    return rc != 0 ? rc : exit_code;
  }

  if (app.got_subcommand(c_conv)) {
    const Domain dom = make_domain(o);
    std::ostringstream cl;
    cl << "convergence " << common_config(o) << " --alpha " << g17(alpha)
       << " --resolutions ";
    for (std::size_t i = 0; i < resolutions.size(); ++i) {
      cl << (i ? "," : "") << resolutions[i];
    }
    if (o.dump_config) return emit(o, cl.str(), [](std::ostream&) {});
    const auto rows = convergence_study(dom, pair, alpha, resolutions, cfg);
    return emit(o, cl.str(), [&](std::ostream& os) { write_convergence_csv(os, rows); });
  }

  if (app.got_subcommand(c_conc)) {
    const Domain dom = make_domain(o);
    const GridPtr grid = make_grid(o, dom, alpha);
    const StencilSet stencils = StencilSet::make(*grid, cfg.extended_stencils);
    std::ostringstream cl;
    cl << "concentration " << common_config(o) << " --alpha " << g17(alpha) << " --deltas ";
    for (std::size_t i = 0; i < deltas.size(); ++i) cl << (i ? "," : "") << g17(deltas[i]);
    if (o.dump_config) return emit(o, cl.str(), [](std::ostream&) {});
    const EigenResult res = principal_eigen(Mode::positive, pair, alpha, grid, stencils, cfg);
    const auto rows = concentration_profile(res, deltas);
    return emit(o, cl.str(), [&](std::ostream& os) { write_concentration_csv(os, rows); });
  }

  if (app.got_subcommand(c_blow)) {
    const Domain dom = make_domain(o);
    const GridPtr grid = make_grid(o, dom, alpha);
    const StencilSet stencils = StencilSet::make(*grid, cfg.extended_stencils);
    std::ostringstream cl;
    cl << "blowup " << common_config(o) << " --alpha " << g17(alpha);
    if (o.dump_config) return emit(o, cl.str(), [](std::ostream&) {});
    const EigenResult res = principal_eigen(Mode::positive, pair, alpha, grid, stencils, cfg);
    const auto rows = blowup_profile(res, alpha);
    return emit(o, cl.str(), [&](std::ostream& os) { write_blowup_csv(os, rows); });
  }

  if (app.got_subcommand(c_liou)) {
    const int n = o.nx > 0 ? o.nx : 2000;
    std::ostringstream cl;
    cl << "liouville --a " << g17(o.a) << " --A " << g17(o.A) << " --gamma " << g17(gamma)
       << " --T " << g17(T) << " --nx " << n;
    if (o.dump_config) return emit(o, cl.str(), [](std::ostream&) {});
    const LiouvilleResult res = liouville_check(pair, gamma, T, n);
    return emit(o, cl.str(), [&](std::ostream& os) {
      write_liouville_csv(os, pair, gamma, T, n, res);
    });
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const pucci::ShiftTooSmall& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return 2;
  } catch (const pucci::SolveFailure& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
