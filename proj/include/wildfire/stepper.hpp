#pragma once

#include <cstdint>
#include <vector>

#include "wildfire/boundary.hpp"
#include "wildfire/diagnostics.hpp"
#include "wildfire/geometry.hpp"
#include "wildfire/physics.hpp"

namespace wildfire {

/// Validated, immutable description of the discretised problem.
struct Model {
  DomainGeometry geom;
  Grid grid;
  PhysicalParameters params;
  WindField wind;
  double guard = 1e6;  // |T| limit in K before NumericalBlowup
  std::vector<BoundaryNode> nodes;

  static Model make(const DomainGeometry& geom, int nx, int ny, double dt,
                    const PhysicalParameters& params, const WindField& wind, double guard = 1e6);
};

struct StepReport {
  double max_cubic_residual = 0.0;
};

/// One explicit Euler step followed by the outer and protected-boundary
/// closures. Throws BlowupError carrying step_index.
StepReport step(State& state, AdaptiveState& ada, const Model& model, const ControllerSpec& ctrl,
                std::int64_t step_index = 0);

struct StabilityAdvisory {
  bool ok = true;
  double rate = 0.0;          // 2 eps (1/d1^2 + 1/d2^2) + |vx|/d1 + |vy|/d2 + A C
  double courant = 0.0;       // dt * rate
  double suggested_dt = 0.0;  // largest dt with courant <= 1
};

StabilityAdvisory stability_advisory(const Grid& grid, const PhysicalParameters& params,
                                     const WindField& wind);

struct RunConfig {
  double t_final = 0.0;
  int output_every = 1;
  int boundary_every = 10;
  std::vector<double> snapshot_times;
  ControllerSpec controller;

  void validate() const;
};

/// Per-node samples along the protected boundary, in Model::nodes order.
struct BoundaryTrace {
  std::vector<double> times;
  std::vector<std::vector<double>> values;
};

struct Snapshot {
  double t = 0.0;
  std::int64_t step = 0;
  State state;
};

struct RunArtifacts {
  EnergyTrace trace;
  double alpha = 0.0;
  std::vector<Snapshot> snapshots;
  BoundaryTrace kappa;
  BoundaryTrace v_hat;  // empty unless adaptive
  State final_state;
  AdaptiveState final_adaptive;
  std::int64_t steps = 0;
  double max_cubic_residual = 0.0;
};

/// Number of steps needed to reach t_final; exact multiples of dt are not
/// pushed over by rounding.
std::int64_t step_count(double t_final, double dt);

RunArtifacts run(const State& initial, const RunConfig& cfg, const Model& model);

}  // namespace wildfire
