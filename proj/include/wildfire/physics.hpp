#pragma once

#include <cstddef>
#include <vector>

#include "wildfire/geometry.hpp"

namespace wildfire {

/// Node-centred scalar field over [0,nx]x[0,ny], stored with i as the outer
/// (slow) index so row-major CSV emission is a linear walk.
class NodeField {
 public:
  NodeField() = default;
  NodeField(int nx, int ny, double value = 0.0)
      : nx_(nx), ny_(ny), data_(static_cast<std::size_t>(nx + 1) * (ny + 1), value) {}

  double& operator()(int i, int j) { return data_[index(i, j)]; }
  double operator()(int i, int j) const { return data_[index(i, j)]; }

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  const std::vector<double>& values() const { return data_; }
  std::vector<double>& values() { return data_; }

  friend bool operator==(const NodeField&, const NodeField&) = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * (ny_ + 1) + static_cast<std::size_t>(j);
  }

  int nx_ = 0;
  int ny_ = 0;
  std::vector<double> data_;
};

struct PhysicalParameters {
  double epsilon = 0.0;  // thermal diffusivity, m^2/s
  double A = 0.0;        // peak combustion heating rate, K/s
  double C = 0.0;        // heat-loss coefficient, 1/K
  double C_S = 0.0;      // fuel depletion coefficient, 1/s
  double gamma = 0.0;    // Arrhenius activation scale, K
  double T_a = 0.0;      // ambient temperature, K

  void validate() const;
};

/// Constant wind. div_sup and v_bar describe the wind for diagnostics; the
/// stepper only reads (vx, vy).
struct WindField {
  double vx = 0.0;
  double vy = 0.0;
  double div_sup = 0.0;
  double v_bar = 0.0;

  static WindField constant(double vx, double vy);
  void validate() const;
};

struct State {
  NodeField T;
  NodeField S;

  State() = default;
  State(const Grid& grid, double T0, double S0)
      : T(grid.nx, grid.ny, T0), S(grid.nx, grid.ny, S0) {}

  friend bool operator==(const State&, const State&) = default;
};

/// exp(-gamma/(T - T_a)) above ambient, 0 at or below.
double arrhenius(double T, const PhysicalParameters& params);

/// True for nodes that receive the interior Euler update.
inline bool is_interior(const Grid& grid, int i, int j) {
  return i >= 1 && i <= grid.nx - 1 && i != grid.n_star && j >= 1 && j <= grid.ny - 1;
}

/// Semi-discrete temperature rate at an interior node: 5-point diffusion,
/// first-order upwind advection, Arrhenius heating and linear heat loss.
/// Throws IndexNotInterior outside the interior node set.
double interior_rhs_T(const State& state, const Grid& grid, const PhysicalParameters& params,
                      const WindField& wind, int i, int j);

double interior_rhs_S(const State& state, const PhysicalParameters& params, int i, int j);

struct Point {
  double x1 = 0.0;
  double x2 = 0.0;
};

/// T = T_a + T_c exp(-|x - center|^2 / (2 w^2)), S = S0.
State gaussian_initial_condition(const Grid& grid, const PhysicalParameters& params, double T_c,
                                 double width, Point center, double S0 = 1.0);

}  // namespace wildfire
