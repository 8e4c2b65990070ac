#include "wildfire/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wildfire/errors.hpp"

namespace wildfire {

namespace {

// Tolerance for w_frac*nx being integral. Decimal configs cannot hold 2/3
// exactly, so the product lands within a few ulps of the integer.
constexpr double kAlignTol = 1e-9;

}  // namespace

double DomainGeometry::sup_bdry() const { return std::sqrt(sup_w_sq()); }

void DomainGeometry::validate() const {
  if (!(L1 > 0.0) || !std::isfinite(L1))
    throw Error(Errc::ValidationError, "geometry.L1 must be positive");
  if (!(L2 > 0.0) || !std::isfinite(L2))
    throw Error(Errc::ValidationError, "geometry.L2 must be positive");
  if (!(w_frac > 0.0 && w_frac < 1.0))
    throw Error(Errc::ValidationError, "geometry.w_frac must lie in (0,1)");
}

Grid build_grid(const DomainGeometry& geom, int nx, int ny, double dt) {
  geom.validate();
  if (nx < 2 || ny < 2)
    throw Error(Errc::InvalidResolution, "nx and ny must be at least 2, got " +
                                             std::to_string(nx) + "x" + std::to_string(ny));
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw Error(Errc::InvalidResolution, "dt must be positive");

  const double scaled = geom.w_frac * nx;
  const double rounded = std::round(scaled);
  if (std::abs(scaled - rounded) > kAlignTol * std::max(1.0, scaled))
    throw Error(Errc::NonAlignedBoundary,
                "w_frac*nx = " + std::to_string(scaled) + " is not an integer");

  Grid g;
  g.nx = nx;
  g.ny = ny;
  g.n_star = static_cast<int>(rounded);
  g.delta1 = geom.L1 / nx;
  g.delta2 = geom.L2 / ny;
  g.dt = dt;
  if (g.n_star <= 0 || g.n_star >= nx)
    throw Error(Errc::NonAlignedBoundary, "protected edge column must satisfy 0 < N* < nx");
  return g;
}

const char* to_string(Edge e) noexcept {
  switch (e) {
    case Edge::Left: return "left";
    case Edge::Right: return "right";
    case Edge::Bottom: return "bottom";
    case Edge::Top: return "top";
  }
  return "?";
}

Edge protected_edge_of(const Grid& grid, int i, int j) {
  if (j >= 0 && j <= grid.ny) {
    if (i == grid.n_star) return Edge::Left;
    if (i == grid.nx) return Edge::Right;
  }
  if (i > grid.n_star && i < grid.nx) {
    if (j == 0) return Edge::Bottom;
    if (j == grid.ny) return Edge::Top;
  }
  throw Error(Errc::NotOnBoundary,
              "(" + std::to_string(i) + "," + std::to_string(j) + ") is not on the protected boundary");
}

UnitNormal normal_on_protected_boundary(const Grid& grid, int i, int j) {
  switch (protected_edge_of(grid, i, j)) {
    case Edge::Left: return {-1, 0};
    case Edge::Right: return {1, 0};
    case Edge::Bottom: return {0, -1};
    case Edge::Top: return {0, 1};
  }
  return {};
}

std::vector<BoundaryNode> boundary_nodes(const Grid& grid) {
  std::vector<BoundaryNode> nodes;
  nodes.reserve(2 * (grid.ny + 1) + 2 * (grid.nx - grid.n_star - 1));

  auto vertical = [&](Edge edge, int i, int nb_i) {
    for (int j = 0; j <= grid.ny; ++j) {
      BoundaryNode n;
      n.i = i;
      n.j = j;
      n.edge = edge;
      n.nb_i = nb_i;
      n.nb_j = j;
      const bool end = (j == 0 || j == grid.ny);
      n.weight = end ? 0.5 * grid.delta2 : grid.delta2;
      if (end) n.corner_weight = 0.5 * grid.delta1;
      nodes.push_back(n);
    }
  };
  auto horizontal = [&](Edge edge, int j, int nb_j) {
    for (int i = grid.n_star + 1; i <= grid.nx - 1; ++i) {
      BoundaryNode n;
      n.i = i;
      n.j = j;
      n.edge = edge;
      n.nb_i = i;
      n.nb_j = nb_j;
      n.weight = grid.delta1;
      nodes.push_back(n);
    }
  };

  vertical(Edge::Left, grid.n_star, grid.n_star + 1);
  vertical(Edge::Right, grid.nx, grid.nx - 1);
  horizontal(Edge::Bottom, 0, 1);
  horizontal(Edge::Top, grid.ny, grid.ny - 1);
  return nodes;
}

}  // namespace wildfire
