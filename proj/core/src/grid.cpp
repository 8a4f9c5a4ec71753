#include "pucci/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace pucci {

Domain Domain::interval(double L) {
  if (!(L > 0.0)) throw std::invalid_argument("interval length must be positive");
  Domain d;
  d.kind = Kind::interval;
  d.lx = L;
  return d;
}

Domain Domain::rectangle(double Lx, double Ly) {
  if (!(Lx > 0.0) || !(Ly > 0.0)) {
    throw std::invalid_argument("rectangle lengths must be positive");
  }
  Domain d;
  d.kind = Kind::rectangle;
  d.lx = Lx;
  d.ly = Ly;
  return d;
}

Domain Domain::halfline(double T) {
  if (!(T > 0.0)) throw std::invalid_argument("halfline truncation must be positive");
  Domain d;
  d.kind = Kind::halfline;
  d.lx = T;
  return d;
}

double Domain::min_length() const {
  if (kind == Kind::rectangle) return std::min(lx, ly);
  return lx;
}

Grid::Grid(const Domain& domain, int nx, int ny) : domain_(domain), nx_(nx), ny_(ny) {
  if (nx < 3) throw std::invalid_argument("build_grid requires nx >= 3");
  if (domain.two_dim()) {
    if (ny < 3) throw std::invalid_argument("build_grid requires ny >= 3 in 2D");
    const double hx = domain.lx / (nx - 1);
    const double hy = domain.ly / (ny - 1);
    if (std::abs(hx - hy) > 1e-12 * std::max(hx, hy)) {
      throw std::invalid_argument(
          "rectangle grid must have identical spacing on both axes "
          "(Lx/(nx-1) != Ly/(ny-1))");
    }
    h_ = hx;
  } else {
    if (ny != 1) throw std::invalid_argument("1D grids take ny = 1");
    h_ = domain.lx / (nx - 1);
  }

  const int n = num_nodes();
  clazz_.resize(n);
  dist_.resize(n);
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) {
      const int node = index(i, j);
      const bool bx = (i == 0 || i == nx_ - 1);
      const bool by = two_dim() && (j == 0 || j == ny_ - 1);
      if (bx && by) {
        clazz_[node] = NodeClass::corner;
      } else if (bx || by) {
        clazz_[node] = NodeClass::face;
      } else {
        clazz_[node] = NodeClass::interior;
      }
      // exact for boxes: min over faces of the axis distances
      int steps = std::min(i, nx_ - 1 - i);
      if (two_dim()) steps = std::min(steps, std::min(j, ny_ - 1 - j));
      dist_[node] = steps * h_;
      max_dist_ = std::max(max_dist_, dist_[node]);
    }
  }
}

std::array<double, 2> Grid::normal(int node) const {
  if (!is_boundary(node)) {
    throw std::invalid_argument("normal() is defined on boundary nodes only");
  }
  const int i = ix(node);
  const int j = iy(node);
  double nx = 0.0, ny = 0.0;
  if (i == 0) nx = -1.0;
  if (i == nx_ - 1) nx = 1.0;
  if (two_dim()) {
    if (j == 0) ny = -1.0;
    if (j == ny_ - 1) ny = 1.0;
  }
  if (nx != 0.0 && ny != 0.0) {
    const double inv = 1.0 / std::sqrt(2.0);
    return {nx * inv, ny * inv};
  }
  return {nx, ny};
}

GridPtr build_grid(const Domain& domain, int nx, int ny) {
  return std::make_shared<Grid>(domain, nx, ny);
}

ScalarField::ScalarField(GridPtr g, double init)
    : grid(std::move(g)), values(grid ? grid->num_nodes() : 0, init) {
  if (!grid) throw std::invalid_argument("ScalarField requires a grid");
}

double sup_norm(const ScalarField& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double restrict_sup(const ScalarField& f, double delta) {
  if (!f.grid) throw std::invalid_argument("field has no grid");
  if (delta > f.grid->max_dist()) {
    throw std::invalid_argument("restrict_sup: K_delta is empty (delta exceeds max dist)");
  }
  double m = 0.0;
  bool any = false;
  for (int node = 0; node < f.size(); ++node) {
    if (f.grid->dist(node) >= delta) {
      m = std::max(m, std::abs(f.values[node]));
      any = true;
    }
  }
  if (!any) throw std::invalid_argument("restrict_sup: K_delta is empty");
  return m;
}

namespace {
void append_g17(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}
}  // namespace

void write_field_csv(std::ostream& os, const ScalarField& f) {
  if (!f.grid) throw std::invalid_argument("field has no grid");
  const Grid& g = *f.grid;
  std::string line;
  os << (g.two_dim() ? "x,y,value\n" : "x,value\n");
  for (int node = 0; node < f.size(); ++node) {
    line.clear();
    append_g17(line, g.x(node));
    if (g.two_dim()) {
      line += ',';
      append_g17(line, g.y(node));
    }
    line += ',';
    append_g17(line, f.values[node]);
    line += '\n';
    os << line;
  }
}

}  // namespace pucci
