#pragma once

#include <optional>
#include <span>
#include <vector>

#include "wildfire/boundary.hpp"
#include "wildfire/geometry.hpp"
#include "wildfire/physics.hpp"

namespace wildfire {

/// Lyapunov time series sampled by the stepper.
struct EnergyTrace {
  std::vector<double> times;
  std::vector<double> B_values;
  std::vector<double> bound_values;  // B(0) exp(-alpha t)
  std::optional<std::vector<double>> Z_values;  // adaptive runs only
};

/// B = 1/2 integral over the protected region of (T - T_a)^2, tensor-product
/// trapezoid over nodes i in [N*, nx], j in [0, ny].
double energy_B(const State& state, const Grid& grid, const PhysicalParameters& params);

/// Decay rate 2AC + 2 eps / sup|x|^2 - V - (2A e^-1 / gamma) sup|S_o|.
double compute_alpha(const PhysicalParameters& params, const WindField& wind,
                     const DomainGeometry& geom, double S_o_sup);

struct AssumptionCheck {
  bool holds = false;
  double alpha = 0.0;
};

AssumptionCheck check_assumption1(const PhysicalParameters& params, const WindField& wind,
                                  const DomainGeometry& geom, double S_o_sup);

double decay_bound(double B0, double alpha, double t);

/// Z = B + 1/(2 lambda) * boundary integral of (v_bar - v_hat)^2.
double lyapunov_Z(const State& state, const AdaptiveState& ada, const Grid& grid,
                  std::span<const BoundaryNode> nodes, const PhysicalParameters& params,
                  double v_bar, double lambda);

/// max of S over protected-region nodes.
double sup_fuel_on_protected(const State& state, const Grid& grid);

}  // namespace wildfire
