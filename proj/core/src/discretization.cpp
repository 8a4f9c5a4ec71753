#include "pucci/discretization.hpp"

#include <cmath>
#include <stdexcept>

namespace pucci {

StencilSet StencilSet::make(const Grid& grid, bool extended) {
  StencilSet s;
  if (!grid.two_dim()) {
    Frame axis;
    axis.dir = {{{1, 0}, {0, 0}}};
    axis.len2 = 1;
    axis.ndir = 1;
    s.frames.push_back(axis);
    return s;
  }
  Frame axis;
  axis.dir = {{{1, 0}, {0, 1}}};
  axis.len2 = 1;
  s.frames.push_back(axis);

  Frame diag;
  diag.dir = {{{1, 1}, {1, -1}}};
  diag.len2 = 2;
  s.frames.push_back(diag);

  if (extended) {
    Frame k1;
    k1.dir = {{{2, 1}, {-1, 2}}};
    k1.len2 = 5;
    s.frames.push_back(k1);
    Frame k2;
    k2.dir = {{{1, 2}, {-2, 1}}};
    k2.len2 = 5;
    s.frames.push_back(k2);
  }
  return s;
}

double BellmanRow::apply(const ScalarField& u) const {
  double v = diag * u.values[node] + constant;
  for (int k = 0; k < nnb; ++k) v += weight[k] * u.values[nb[k]];
  return v;
}

std::optional<double> directional_second_diff(const ScalarField& f, int node,
                                              std::array<int, 2> e) {
  const Grid& g = *f.grid;
  const int fwd = g.neighbor(node, e[0], e[1]);
  const int bwd = g.neighbor(node, -e[0], -e[1]);
  if (fwd < 0 || bwd < 0) return std::nullopt;
  const double len2 = double(e[0]) * e[0] + double(e[1]) * e[1];
  const double scale = 1.0 / (g.h() * g.h() * len2);
  return (f.values[fwd] - 2.0 * f.values[node] + f.values[bwd]) * scale;
}

namespace {

BellmanRow make_policy_row(const Grid& g, int node, const Frame& fr, int frame_idx,
                           const std::array<double, 2>& coeff) {
  BellmanRow row;
  row.node = node;
  row.frame = frame_idx;
  row.coeff = coeff;
  const double inv = 1.0 / (g.h() * g.h() * fr.len2);
  for (int d = 0; d < fr.ndir; ++d) {
    const double w = coeff[d] * inv;
    row.diag -= 2.0 * w;
    row.nb[row.nnb] = g.neighbor(node, fr.dir[d][0], fr.dir[d][1]);
    row.weight[row.nnb++] = w;
    row.nb[row.nnb] = g.neighbor(node, -fr.dir[d][0], -fr.dir[d][1]);
    row.weight[row.nnb++] = w;
  }
  return row;
}

}  // namespace

BellmanEval bellman_value(const ScalarField& f, int node, const PucciPair& pair,
                          Op op, const StencilSet& stencils) {
  const Grid& g = *f.grid;
  if (g.is_boundary(node)) {
    throw std::invalid_argument("bellman_value is defined on interior nodes only");
  }
  bool found = false;
  double best = 0.0;
  int best_frame = -1;
  std::array<double, 2> best_coeff{0.0, 0.0};

  for (std::size_t fi = 0; fi < stencils.frames.size(); ++fi) {
    const Frame& fr = stencils.frames[fi];
    double value = 0.0;
    std::array<double, 2> coeff{0.0, 0.0};
    bool ok = true;
    for (int d = 0; d < fr.ndir; ++d) {
      const auto dd = directional_second_diff(f, node, fr.dir[d]);
      if (!dd) {
        ok = false;
        break;
      }
      coeff[d] = extremal_coefficient(*dd, pair, op);
      value += coeff[d] * (*dd);
    }
    if (!ok) continue;
    const bool better = op == Op::plus ? value > best : value < best;
    if (!found || better) {
      found = true;
      best = value;
      best_frame = static_cast<int>(fi);
      best_coeff = coeff;
    }
  }
  if (!found) {
    // cannot happen: the axis frame's one-step neighbors exist at every
    // interior node
    throw std::logic_error("no admissible frame at interior node");
  }
  BellmanEval eval;
  eval.value = best;
  eval.row = make_policy_row(g, node, stencils.frames[best_frame], best_frame, best_coeff);
  return eval;
}

BellmanRow robin_row(const Grid& grid, int node, double alpha) {
  if (!grid.is_boundary(node)) {
    throw std::invalid_argument("robin_row is defined on boundary nodes only");
  }
  if (grid.is_dirichlet_closure(node)) {
    throw std::invalid_argument("robin_row: node is a Dirichlet closure, not a Robin boundary");
  }
  const double h = grid.h();
  if (alpha * h >= 1.0) {
    const int needed = static_cast<int>(std::ceil(alpha * grid.domain().lx)) + 2;
    throw std::invalid_argument(
        "robin_row requires alpha*h < 1; refine the grid to at least nx = " +
        std::to_string(needed));
  }

  BellmanRow row;
  row.node = node;
  row.diag = (1.0 - alpha * h) / h;

  const int i = grid.ix(node);
  const int j = grid.iy(node);
  const int di = (i == 0) ? 1 : (i == grid.nx() - 1 ? -1 : 0);
  const int dj = grid.two_dim() ? ((j == 0) ? 1 : (j == grid.ny() - 1 ? -1 : 0)) : 0;

  if (grid.node_class(node) == NodeClass::corner) {
    // average of the two one-sided face conditions
    row.nb[row.nnb] = grid.neighbor(node, di, 0);
    row.weight[row.nnb++] = -0.5 / h;
    row.nb[row.nnb] = grid.neighbor(node, 0, dj);
    row.weight[row.nnb++] = -0.5 / h;
  } else {
    row.nb[row.nnb] = grid.neighbor(node, di, dj);
    row.weight[row.nnb++] = -1.0 / h;
  }
  return row;
}

ScalarField assemble_residual(const ScalarField& u, const PucciPair& pair, Op op,
                              double alpha, double lambda, const StencilSet& stencils) {
  const Grid& g = *u.grid;
  ScalarField r(u.grid, 0.0);
  for (int node = 0; node < u.size(); ++node) {
    if (g.is_dirichlet_closure(node)) {
      r.values[node] = 0.0;
    } else if (g.is_boundary(node)) {
      r.values[node] = robin_row(g, node, alpha).apply(u);
    } else {
      r.values[node] = bellman_value(u, node, pair, op, stencils).value +
                       lambda * u.values[node];
    }
  }
  return r;
}

}  // namespace pucci
