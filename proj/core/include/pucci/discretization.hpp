#pragma once

#include <array>
#include <optional>
#include <vector>

#include "pucci/grid.hpp"
#include "pucci/pucci_operator.hpp"

namespace pucci {

/// One orthogonal pair of lattice directions with equal squared length.
/// 1D grids use a single axis direction.
struct Frame {
  std::array<std::array<int, 2>, 2> dir{{{1, 0}, {0, 1}}};
  int len2 = 1;   // shared squared lattice length of both directions
  int ndir = 2;   // 1 in 1D
};

/// The frames the discrete operator maximizes over. The axis frame is
/// always present; the diagonal frame joins it in 2D, and the (2,1)-family
/// can be enabled for a wider stencil.
struct StencilSet {
  std::vector<Frame> frames;

  static StencilSet make(const Grid& grid, bool extended = false);
};

/// Linearized operator row at one node:
///   apply(u) = diag * u[node] + sum_k weight[k] * u[nb[k]] + constant.
/// Interior rows come from a frozen Bellman policy (frame + coefficients);
/// boundary rows discretize the Robin condition scaled by 1/h. Off-diagonal
/// weights of interior rows are >= 0 (monotone scheme).
struct BellmanRow {
  int node = -1;
  int frame = -1;  // -1 on boundary rows
  std::array<double, 2> coeff{0.0, 0.0};
  double diag = 0.0;
  std::array<int, 4> nb{-1, -1, -1, -1};
  std::array<double, 4> weight{0.0, 0.0, 0.0, 0.0};
  int nnb = 0;
  double constant = 0.0;

  double apply(const ScalarField& u) const;
};

/// Centered second difference (f(x+he) - 2 f(x) + f(x-he)) / (h^2 |e|^2)
/// along lattice direction e; consistent with e^T D^2u e / |e|^2 and exact
/// on quadratics. Empty when a required neighbor leaves the grid.
std::optional<double> directional_second_diff(const ScalarField& f, int node,
                                              std::array<int, 2> e);

struct BellmanEval {
  double value = 0.0;
  BellmanRow row;
};

/// Discrete extremal operator at an interior node: max over available
/// frames of sum_i phi(d_i) with phi(t) = A t+ + a t- (plus), min with
/// psi(t) = a t+ + A t- (minus). Frames with missing neighbors are
/// skipped; the axis frame always survives for interior nodes.
BellmanEval bellman_value(const ScalarField& f, int node, const PucciPair& pair,
                          Op op, const StencilSet& stencils);

/// First-order one-sided Robin row at a boundary node, scaled by 1/h so
/// boundary and interior residuals are comparable:
///   face:   ((1 - alpha h) u_b - u_inner) / h
///   corner: the average of the two face forms.
/// Requires alpha * h < 1 so the row diagonal stays positive.
BellmanRow robin_row(const Grid& grid, int node, double alpha);

/// Nodewise residual of M_h(u) + lambda u with homogeneous Robin rows
/// (scaled by 1/h) on the boundary. Dirichlet-closure nodes of half-line
/// grids carry no Robin condition and report zero.
ScalarField assemble_residual(const ScalarField& u, const PucciPair& pair, Op op,
                              double alpha, double lambda, const StencilSet& stencils);

}  // namespace pucci
