#include "wildfire/physics.hpp"

#include <cmath>
#include <string>

#include "wildfire/errors.hpp"

namespace wildfire {

void PhysicalParameters::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(Errc::ValidationError, what);
  };
  require(epsilon > 0.0 && std::isfinite(epsilon), "physics.epsilon must be positive");
  require(A >= 0.0 && std::isfinite(A), "physics.A must be non-negative");
  require(C >= 0.0 && std::isfinite(C), "physics.C must be non-negative");
  require(C_S >= 0.0 && std::isfinite(C_S), "physics.C_S must be non-negative");
  require(gamma > 0.0 && std::isfinite(gamma), "physics.gamma must be positive");
  require(T_a > 0.0 && std::isfinite(T_a), "physics.T_a must be positive");
}

WindField WindField::constant(double vx, double vy) {
  return WindField{vx, vy, 0.0, std::hypot(vx, vy)};
}

void WindField::validate() const {
  if (!std::isfinite(vx) || !std::isfinite(vy))
    throw Error(Errc::ValidationError, "wind components must be finite");
  if (!(div_sup >= 0.0) || !std::isfinite(div_sup))
    throw Error(Errc::ValidationError, "wind.div_sup must be non-negative");
  if (!(v_bar >= 0.0) || !std::isfinite(v_bar))
    throw Error(Errc::ValidationError, "wind.v_bar must be non-negative");
}

double arrhenius(double T, const PhysicalParameters& params) {
  const double dev = T - params.T_a;
  if (!(dev > 0.0)) return 0.0;
  return std::exp(-params.gamma / dev);
}

double interior_rhs_T(const State& state, const Grid& grid, const PhysicalParameters& params,
                      const WindField& wind, int i, int j) {
  if (!is_interior(grid, i, j))
    throw Error(Errc::IndexNotInterior,
                "(" + std::to_string(i) + "," + std::to_string(j) + ") is not an interior node");

  const NodeField& T = state.T;
  const double c = T(i, j);
  const double d1sq = grid.delta1 * grid.delta1;
  const double d2sq = grid.delta2 * grid.delta2;

  const double diffusion = params.epsilon * ((T(i + 1, j) - 2.0 * c + T(i - 1, j)) / d1sq +
                                             (T(i, j + 1) - 2.0 * c + T(i, j - 1)) / d2sq);

  double advection = 0.0;
  if (wind.vx > 0.0)
    advection += wind.vx * (c - T(i - 1, j)) / grid.delta1;
  else if (wind.vx < 0.0)
    advection += wind.vx * (T(i + 1, j) - c) / grid.delta1;
  if (wind.vy > 0.0)
    advection += wind.vy * (c - T(i, j - 1)) / grid.delta2;
  else if (wind.vy < 0.0)
    advection += wind.vy * (T(i, j + 1) - c) / grid.delta2;

  const double reaction =
      params.A * (state.S(i, j) * arrhenius(c, params) - params.C * (c - params.T_a));

  return diffusion - advection + reaction;
}

double interior_rhs_S(const State& state, const PhysicalParameters& params, int i, int j) {
  return -params.C_S * state.S(i, j) * arrhenius(state.T(i, j), params);
}

State gaussian_initial_condition(const Grid& grid, const PhysicalParameters& params, double T_c,
                                 double width, Point center, double S0) {
  if (!(width > 0.0)) throw Error(Errc::ValidationError, "ic.w must be positive");
  State s(grid, params.T_a, S0);
  const double denom = 2.0 * width * width;
  for (int i = 0; i <= grid.nx; ++i) {
    const double dx = grid.x1(i) - center.x1;
    for (int j = 0; j <= grid.ny; ++j) {
      const double dy = grid.x2(j) - center.x2;
      s.T(i, j) = params.T_a + T_c * std::exp(-(dx * dx + dy * dy) / denom);
    }
  }
  return s;
}

}  // namespace wildfire
