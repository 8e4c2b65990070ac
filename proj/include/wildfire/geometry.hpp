#pragma once

#include <array>
#include <vector>

namespace wildfire {

/// Rectangular fire domain [0,L1]x[0,L2] with the protected region
/// [w_frac*L1, L1]x[0,L2] on its right-hand side.
struct DomainGeometry {
  double L1 = 0.0;
  double L2 = 0.0;
  double w_frac = 2.0 / 3.0;

  /// sup over the protected rectangle of |x|^2; attained at (L1, L2).
  double sup_w_sq() const { return L1 * L1 + L2 * L2; }
  /// sup over its boundary of |x|; same corner.
  double sup_bdry() const;
  /// Protected rectangle extents.
  double protected_width() const { return (1.0 - w_frac) * L1; }
  double protected_perimeter() const { return 2.0 * (protected_width() + L2); }

  /// Throws ValidationError if any invariant is violated.
  void validate() const;
};

struct Grid {
  int nx = 0;  // last node index along x1
  int ny = 0;  // last node index along x2
  int n_star = 0;  // column of the protected region's left edge
  double delta1 = 0.0;
  double delta2 = 0.0;
  double dt = 0.0;

  double x1(int i) const { return i * delta1; }
  double x2(int j) const { return j * delta2; }
  int node_count() const { return (nx + 1) * (ny + 1); }
};

/// Throws InvalidResolution when nx or ny < 2 (or dt <= 0) and
/// NonAlignedBoundary when w_frac*nx is not an integer.
Grid build_grid(const DomainGeometry& geom, int nx, int ny, double dt);

enum class Edge { Left, Right, Bottom, Top };

const char* to_string(Edge e) noexcept;

inline constexpr std::array<Edge, 4> kAllEdges{Edge::Left, Edge::Right, Edge::Bottom, Edge::Top};

inline bool is_vertical(Edge e) { return e == Edge::Left || e == Edge::Right; }

struct UnitNormal {
  int n1 = 0;
  int n2 = 0;
};

/// Edge of the protected boundary a node belongs to. Corner nodes belong to
/// the vertical edges. Throws NotOnBoundary for any other node.
Edge protected_edge_of(const Grid& grid, int i, int j);

/// Outward normal of the protected region at a boundary node.
UnitNormal normal_on_protected_boundary(const Grid& grid, int i, int j);

struct BoundaryNode {
  int i = 0;
  int j = 0;
  Edge edge = Edge::Left;
  /// Trapezoid weight along the node's own edge.
  double weight = 0.0;
  /// Trapezoid share of the adjacent horizontal edge; nonzero on corners only.
  double corner_weight = 0.0;
  /// Adjacent node that closes the one-sided normal difference.
  int nb_i = 0;
  int nb_j = 0;

  double surface_weight() const { return weight + corner_weight; }
  /// Spacing normal to the edge.
  double normal_spacing(const Grid& grid) const {
    return is_vertical(edge) ? grid.delta1 : grid.delta2;
  }
};

/// Every node of the protected boundary, once each, ordered left edge
/// (j ascending), right edge, bottom edge (i ascending), top edge.
std::vector<BoundaryNode> boundary_nodes(const Grid& grid);

}  // namespace wildfire
