#include "wildfire/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wildfire/errors.hpp"

namespace wildfire {

Model Model::make(const DomainGeometry& geom, int nx, int ny, double dt,
                  const PhysicalParameters& params, const WindField& wind, double guard) {
  params.validate();
  wind.validate();
  if (!(guard > 0.0)) throw Error(Errc::ValidationError, "run.guard must be positive");
  Model m;
  m.geom = geom;
  m.grid = build_grid(geom, nx, ny, dt);
  m.params = params;
  m.wind = wind;
  m.guard = guard;
  m.nodes = boundary_nodes(m.grid);
  return m;
}

StepReport step(State& state, AdaptiveState& ada, const Model& model, const ControllerSpec& ctrl,
                std::int64_t step_index) {
  const Grid& g = model.grid;
  const PhysicalParameters& pp = model.params;
  const double dt = g.dt;

  State next = state;
  for (int i = 1; i <= g.nx - 1; ++i) {
    if (i == g.n_star) continue;
    for (int j = 1; j <= g.ny - 1; ++j)
      next.T(i, j) = state.T(i, j) + dt * interior_rhs_T(state, g, pp, model.wind, i, j);
  }
  if (pp.C_S > 0.0) {
    for (int i = 0; i <= g.nx; ++i)
      for (int j = 0; j <= g.ny; ++j) {
        const double s = state.S(i, j);
        next.S(i, j) = std::clamp(s + dt * interior_rhs_S(state, pp, i, j), 0.0, s);
      }
  }

  apply_outer_boundary(next, g);
  StepReport report;
  switch (ctrl.kind) {
    case ControllerKind::OpenLoop:
      apply_open_loop(next, g);
      break;
    case ControllerKind::KnownWind:
      apply_feedback(next, g, model.nodes, edge_coefficients(ctrl.k, pp, model.geom, model.wind),
                     pp);
      break;
    case ControllerKind::Adaptive:
      report.max_cubic_residual =
          apply_adaptive(next, g, model.nodes, ctrl, ada, pp, model.geom).max_scaled_residual;
      break;
  }

  for (double t : next.T.values()) {
    if (!std::isfinite(t) || std::abs(t) > model.guard)
      throw BlowupError(step_index, "temperature " + std::to_string(t) + " K exceeds guard " +
                                        std::to_string(model.guard) + " K");
  }
  state = std::move(next);
  return report;
}

StabilityAdvisory stability_advisory(const Grid& grid, const PhysicalParameters& params,
                                     const WindField& wind) {
  StabilityAdvisory adv;
  adv.rate = 2.0 * params.epsilon *
                 (1.0 / (grid.delta1 * grid.delta1) + 1.0 / (grid.delta2 * grid.delta2)) +
             std::abs(wind.vx) / grid.delta1 + std::abs(wind.vy) / grid.delta2 +
             params.A * params.C;
  adv.courant = grid.dt * adv.rate;
  adv.ok = adv.courant <= 1.0;
  adv.suggested_dt = adv.rate > 0.0 ? 1.0 / adv.rate : std::numeric_limits<double>::infinity();
  return adv;
}

void RunConfig::validate() const {
  if (!(t_final > 0.0) || !std::isfinite(t_final))
    throw Error(Errc::ValidationError, "run.t_final must be positive");
  if (output_every < 1) throw Error(Errc::ValidationError, "run.output_every must be >= 1");
  if (boundary_every < 1) throw Error(Errc::ValidationError, "run.boundary_every must be >= 1");
  controller.validate();
}

std::int64_t step_count(double t_final, double dt) {
  const double ratio = t_final / dt;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio))
    return static_cast<std::int64_t>(nearest);
  return static_cast<std::int64_t>(std::ceil(ratio));
}

RunArtifacts run(const State& initial, const RunConfig& cfg, const Model& model) {
  cfg.validate();
  const ControllerSpec& ctrl = cfg.controller;
  const Grid& g = model.grid;
  if (ctrl.kind == ControllerKind::KnownWind)
    validate_feedback(g, edge_coefficients(ctrl.k, model.params, model.geom, model.wind));

  RunArtifacts out;
  out.steps = step_count(cfg.t_final, g.dt);

  std::vector<std::int64_t> snap_steps;
  for (double t : cfg.snapshot_times) snap_steps.push_back(std::llround(t / g.dt));

  State state = initial;
  AdaptiveState ada;
  if (ctrl.kind == ControllerKind::Adaptive)
    ada = AdaptiveState::uniform(model.nodes.size(), ctrl.v_hat_init);
  const EdgeCoefficients coeffs = edge_coefficients(ctrl.k, model.params, model.geom, model.wind);

  out.alpha =
      compute_alpha(model.params, model.wind, model.geom, sup_fuel_on_protected(initial, g));
  const double B0 = energy_B(initial, g, model.params);
  if (ctrl.kind == ControllerKind::Adaptive) out.trace.Z_values.emplace();

  auto record = [&](std::int64_t n) {
    const double t = static_cast<double>(n) * g.dt;
    const bool trace_due = n % cfg.output_every == 0 || n == out.steps;
    if (trace_due) {
      out.trace.times.push_back(t);
      out.trace.B_values.push_back(energy_B(state, g, model.params));
      out.trace.bound_values.push_back(decay_bound(B0, out.alpha, t));
      if (out.trace.Z_values)
        out.trace.Z_values->push_back(lyapunov_Z(state, ada, g, model.nodes, model.params,
                                                 model.wind.v_bar, ctrl.lambda));
    }
    if (n % cfg.boundary_every == 0 || n == out.steps) {
      out.kappa.times.push_back(t);
      out.kappa.values.push_back(
          boundary_flux(state, model.nodes, ctrl, coeffs, ada, model.params, model.geom));
      if (ctrl.kind == ControllerKind::Adaptive) {
        out.v_hat.times.push_back(t);
        out.v_hat.values.push_back(ada.v_hat);
      }
    }
    if (std::find(snap_steps.begin(), snap_steps.end(), n) != snap_steps.end())
      out.snapshots.push_back({t, n, state});
  };

  record(0);
  for (std::int64_t n = 1; n <= out.steps; ++n) {
    const StepReport rep = step(state, ada, model, ctrl, n);
    out.max_cubic_residual = std::max(out.max_cubic_residual, rep.max_cubic_residual);
    record(n);
  }
  out.final_state = std::move(state);
  out.final_adaptive = std::move(ada);
  return out;
}

}  // namespace wildfire
