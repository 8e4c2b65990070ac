#include "wildfire/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "wildfire/errors.hpp"

namespace wildfire {

double energy_B(const State& state, const Grid& grid, const PhysicalParameters& params) {
  double sum = 0.0;
  for (int i = grid.n_star; i <= grid.nx; ++i) {
    const double wi = (i == grid.n_star || i == grid.nx) ? 0.5 : 1.0;
    for (int j = 0; j <= grid.ny; ++j) {
      const double wj = (j == 0 || j == grid.ny) ? 0.5 : 1.0;
      const double dev = state.T(i, j) - params.T_a;
      sum += wi * wj * dev * dev;
    }
  }
  return 0.5 * sum * grid.delta1 * grid.delta2;
}

double compute_alpha(const PhysicalParameters& params, const WindField& wind,
                     const DomainGeometry& geom, double S_o_sup) {
  return 2.0 * params.A * params.C + 2.0 * params.epsilon / geom.sup_w_sq() - wind.div_sup -
         (2.0 * params.A * std::exp(-1.0) / params.gamma) * std::abs(S_o_sup);
}

AssumptionCheck check_assumption1(const PhysicalParameters& params, const WindField& wind,
                                  const DomainGeometry& geom, double S_o_sup) {
  const double alpha = compute_alpha(params, wind, geom, S_o_sup);
  return {alpha > 0.0, alpha};
}

double decay_bound(double B0, double alpha, double t) { return B0 * std::exp(-alpha * t); }

double lyapunov_Z(const State& state, const AdaptiveState& ada, const Grid& grid,
                  std::span<const BoundaryNode> nodes, const PhysicalParameters& params,
                  double v_bar, double lambda) {
  if (ada.v_hat.size() != nodes.size())
    throw Error(Errc::ValidationError, "adaptive state size does not match boundary node count");
  double penalty = 0.0;
  for (std::size_t idx = 0; idx < nodes.size(); ++idx) {
    const double gap = v_bar - ada.v_hat[idx];
    penalty += nodes[idx].surface_weight() * gap * gap;
  }
  return energy_B(state, grid, params) + penalty / (2.0 * lambda);
}

double sup_fuel_on_protected(const State& state, const Grid& grid) {
  double sup = 0.0;
  for (int i = grid.n_star; i <= grid.nx; ++i)
    for (int j = 0; j <= grid.ny; ++j) sup = std::max(sup, std::abs(state.S(i, j)));
  return sup;
}

}  // namespace wildfire
