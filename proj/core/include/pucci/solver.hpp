#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>

#include "pucci/discretization.hpp"
#include "pucci/grid.hpp"
#include "pucci/pucci_operator.hpp"

namespace pucci {

/// Raised when a policy-frozen solve breaks down (singular factorization or
/// a non-positive solution from a positive right-hand side): the shift does
/// not dominate the discrete principal value.
struct ShiftTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised on iteration-budget exhaustion.
struct SolveFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Mode { positive, negative };

/// Shifted Bellman problem mu*u - M_h(u) = rhs (interior) with Robin rows
/// on the boundary. The optional half-line extras carry a fixed flux datum
/// du/dn = flux_datum at x = 0 and a Dirichlet value at the far closure;
/// eigen solves leave both unset.
struct ShiftedProblem {
  PucciPair pair;
  Op op = Op::plus;
  double alpha = 0.0;
  double mu = 1.0;
  ScalarField rhs;

  std::optional<double> flux_datum;
  /// Discretize the flux datum by eliminating the ghost value through the
  /// interior equation (second order, M-matrix preserving). When false a
  /// first-order one-sided row carries the datum instead.
  bool second_order_flux = true;
  std::optional<double> dirichlet_value;
};

struct EigenConfig {
  double tol_lambda = 1e-8;     // relative Collatz-Wielandt bracket width
  double residual_tol = 1e-10;  // relative sup-norm residual of shifted solves
  int max_power_iters = 5000;
  int max_howard_iters = 50;
  int max_shift_doublings = 20;
  double alpha_h_limit = 0.1;
  bool extended_stencils = false;
  std::uint64_t random_init_seed = 0;  // 0: deterministic all-ones start
  double shift_override = 0.0;         // 0: use adapt_shift
};

/// Principal eigenpair with its certificates. The bracket [cw_lo, cw_hi]
/// encloses -lambda; u has sup-norm 1 and is strictly positive (positive
/// mode) or strictly negative (negative mode).
struct EigenResult {
  double lambda = 0.0;
  ScalarField u;
  double cw_lo = 0.0;
  double cw_hi = 0.0;
  int power_iters = 0;
  int howard_iters_total = 0;
  double interior_residual = 0.0;
  double boundary_residual = 0.0;
  double shift = 0.0;
  int shift_doublings = 0;
};

/// Initial shift mu0 = 4 max(A,1) (alpha^2 + alpha + 1/Lmin^2); doubled by
/// principal_eigen on shift-too-small signals.
double adapt_shift(const PucciPair& pair, double alpha, const Grid& grid);

/// Howard policy iteration for the shifted problem: freeze the argmax frame
/// and coefficients per node, solve the sparse linear system directly,
/// re-select, and stop once the nonlinear residual drops below tol
/// (relative). For rhs >= 0, rhs not identically 0, the solution is
/// strictly positive under a valid shift.
ScalarField howard_solve(const ShiftedProblem& p, const Grid& grid,
                         const StencilSet& stencils, double tol, int max_iters);

/// Collatz-Wielandt bracket for -lambda on a strictly positive field that
/// satisfies the Robin rows: [min, max] over interior nodes of M_h(u)/u.
/// u is a discrete supersolution at lambda = -hi and subsolution at
/// lambda = -lo.
std::pair<double, double> collatz_bracket(const ScalarField& u, const PucciPair& pair,
                                          Op op, double alpha, const StencilSet& stencils);

/// Inverse-power iteration u_{k+1} = (mu - M_h)^{-1} u_k on the positive
/// cone, normalized in sup norm, stopping when the Collatz-Wielandt bracket
/// of the iterate is tighter than cfg.tol_lambda. When the requested width
/// is below the roundoff floor of the grid, the best certified bracket is
/// returned instead (cw_lo/cw_hi report the achieved width). The negative
/// mode runs the dual operator (op = minus) on positive functions and
/// returns (lambda, -u).
EigenResult principal_eigen(Mode mode, const PucciPair& pair, double alpha,
                            const GridPtr& grid, const StencilSet& stencils,
                            const EigenConfig& cfg = {});

}  // namespace pucci
