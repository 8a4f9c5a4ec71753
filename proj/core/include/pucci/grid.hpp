#pragma once

#include <array>
#include <iosfwd>
#include <memory>
#include <vector>

namespace pucci {

/// Computational domain: an interval [0, L], an axis-aligned rectangle
/// [0, Lx] x [0, Ly], or a half-line truncated to [0, T]. The half-line's
/// far end x = T is an artificial Dirichlet closure rather than a Robin
/// boundary.
struct Domain {
  enum class Kind { interval, rectangle, halfline };

  Kind kind = Kind::interval;
  double lx = 1.0;  // interval length L, rectangle Lx, or truncation T
  double ly = 0.0;  // rectangle Ly, unused otherwise

  static Domain interval(double L);
  static Domain rectangle(double Lx, double Ly);
  static Domain halfline(double T);

  double min_length() const;
  bool two_dim() const { return kind == Kind::rectangle; }
};

enum class NodeClass : unsigned char { interior, face, corner };

/// Uniform node lattice over a Domain with boundary classification, unit
/// outward normals, and exact distance-to-boundary. Immutable after
/// construction; concurrent reads are safe.
class Grid {
 public:
  Grid(const Domain& domain, int nx, int ny);

  const Domain& domain() const { return domain_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double h() const { return h_; }
  bool two_dim() const { return ny_ > 1; }
  int num_nodes() const { return nx_ * ny_; }

  int index(int i, int j) const { return j * nx_ + i; }
  int ix(int node) const { return node % nx_; }
  int iy(int node) const { return node / nx_; }
  double x(int node) const { return ix(node) * h_; }
  double y(int node) const { return iy(node) * h_; }

  NodeClass node_class(int node) const { return clazz_[node]; }
  bool is_boundary(int node) const { return clazz_[node] != NodeClass::interior; }

  /// True at the far end x = T of a half-line grid. Such nodes take a
  /// Dirichlet closure instead of a Robin row.
  bool is_dirichlet_closure(int node) const {
    return domain_.kind == Domain::Kind::halfline && node == nx_ - 1;
  }

  /// Unit outward normal; defined on boundary nodes only. Corners carry the
  /// outward diagonal (+-1, +-1)/sqrt(2).
  std::array<double, 2> normal(int node) const;

  double dist(int node) const { return dist_[node]; }
  double max_dist() const { return max_dist_; }

  /// Node reached from `node` by the lattice step (di, dj), or -1 when the
  /// step leaves the grid.
  int neighbor(int node, int di, int dj) const {
    const int i = ix(node) + di;
    const int j = iy(node) + dj;
    if (i < 0 || i >= nx_ || j < 0 || j >= ny_) return -1;
    return index(i, j);
  }

 private:
  Domain domain_;
  int nx_ = 0;
  int ny_ = 1;
  double h_ = 0.0;
  double max_dist_ = 0.0;
  std::vector<NodeClass> clazz_;
  std::vector<double> dist_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Builds a classified grid. nx >= 3 (and ny >= 3 in 2D); rectangles must
/// admit one spacing h = Lx/(nx-1) = Ly/(ny-1) on both axes.
GridPtr build_grid(const Domain& domain, int nx, int ny = 1);

/// Per-node real values tied to the grid they were sampled on.
struct ScalarField {
  GridPtr grid;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(GridPtr g, double init = 0.0);

  double& operator[](int node) { return values[node]; }
  double operator[](int node) const { return values[node]; }
  int size() const { return static_cast<int>(values.size()); }
};

/// Max of |values|.
double sup_norm(const ScalarField& f);

/// Sup of |values| over the compact K_delta = {dist >= delta}. Rejects an
/// empty K_delta.
double restrict_sup(const ScalarField& f, double delta);

/// CSV dump: header "x,y,value" (y omitted in 1D), one row per node in
/// row-major order, 17 significant digits.
void write_field_csv(std::ostream& os, const ScalarField& f);

}  // namespace pucci
