#include "wildfire/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wildfire/errors.hpp"

namespace wildfire {

namespace {

// 2 sup_{dW}|x| / sup_W |x|^2, the Friedrichs-Poincare boundary constant.
double poincare_term(const DomainGeometry& geom) {
  return 2.0 * geom.sup_bdry() / geom.sup_w_sq();
}

double dot_normal(UnitNormal n, const WindField& wind) { return n.n1 * wind.vx + n.n2 * wind.vy; }

UnitNormal normal_of(Edge e) {
  switch (e) {
    case Edge::Left: return {-1, 0};
    case Edge::Right: return {1, 0};
    case Edge::Bottom: return {0, -1};
    case Edge::Top: return {0, 1};
  }
  return {};
}

}  // namespace

const char* to_string(ControllerKind kind) noexcept {
  switch (kind) {
    case ControllerKind::OpenLoop: return "open_loop";
    case ControllerKind::KnownWind: return "feedback";
    case ControllerKind::Adaptive: return "adaptive";
  }
  return "?";
}

void ControllerSpec::validate() const {
  if (!(k >= 0.0) || !std::isfinite(k))
    throw Error(Errc::ValidationError, "controller.k must be non-negative");
  if (kind == ControllerKind::Adaptive) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
      throw Error(Errc::ValidationError, "controller.lambda must be positive");
    if (!(v_hat_init >= 0.0) || !std::isfinite(v_hat_init))
      throw Error(Errc::ValidationError, "controller.v_hat_init must be non-negative");
  }
}

double EdgeCoefficients::of(Edge e) const {
  switch (e) {
    case Edge::Left: return left;
    case Edge::Right: return right;
    case Edge::Bottom: return bottom;
    case Edge::Top: return top;
  }
  return 0.0;
}

double kappa_known(double T_tilde, double n_dot_v, double k, const PhysicalParameters& params,
                   const DomainGeometry& geom) {
  const double coeff = (n_dot_v - 2.0 * k) / (2.0 * params.epsilon) - poincare_term(geom);
  return coeff * T_tilde;
}

double kappa_adaptive(double T_tilde, double v_hat, double k, const PhysicalParameters& params,
                      const DomainGeometry& geom) {
  const double coeff = (v_hat + 2.0 * k) / (2.0 * params.epsilon) + poincare_term(geom);
  return -coeff * T_tilde;
}

EdgeCoefficients edge_coefficients(double k, const PhysicalParameters& params,
                                   const DomainGeometry& geom, const WindField& wind) {
  auto l = [&](Edge e) { return -kappa_known(1.0, dot_normal(normal_of(e), wind), k, params, geom); };
  return {l(Edge::Left), l(Edge::Right), l(Edge::Bottom), l(Edge::Top)};
}

void validate_feedback(const Grid& grid, const EdgeCoefficients& coeffs) {
  for (Edge e : kAllEdges) {
    const double spacing = is_vertical(e) ? grid.delta1 : grid.delta2;
    const double denom = 1.0 + spacing * coeffs.of(e);
    if (!(denom > 0.0))
      throw Error(Errc::DegenerateDenominator, std::string("1 + delta*l <= 0 on the ") +
                                                   to_string(e) + " edge; increase controller.k");
  }
}

void apply_outer_boundary(State& state, const Grid& grid) {
  NodeField& T = state.T;
  for (int j = 0; j <= grid.ny; ++j) T(0, j) = T(1, j);
  for (int i = 0; i < grid.n_star; ++i) {
    T(i, 0) = T(i, 1);
    T(i, grid.ny) = T(i, grid.ny - 1);
  }
}

void apply_open_loop(State& state, const Grid& grid) {
  NodeField& T = state.T;
  // Horizontal edges first so corner copies see this step's edge values.
  for (int i = grid.n_star + 1; i <= grid.nx - 1; ++i) {
    T(i, 0) = T(i, 1);
    T(i, grid.ny) = T(i, grid.ny - 1);
  }
  for (int j = 0; j <= grid.ny; ++j) {
    T(grid.n_star, j) = T(grid.n_star + 1, j);
    T(grid.nx, j) = T(grid.nx - 1, j);
  }
}

void apply_feedback(State& state, const Grid& grid, std::span<const BoundaryNode> nodes,
                    const EdgeCoefficients& coeffs, const PhysicalParameters& params) {
  validate_feedback(grid, coeffs);
  NodeField& T = state.T;
  auto close = [&](const BoundaryNode& n) {
    const double dl = n.normal_spacing(grid) * coeffs.of(n.edge);
    T(n.i, n.j) = T(n.nb_i, n.nb_j) / (1.0 + dl) + (dl / (1.0 + dl)) * params.T_a;
  };
  for (const auto& n : nodes)
    if (!is_vertical(n.edge)) close(n);
  for (const auto& n : nodes)
    if (is_vertical(n.edge)) close(n);
}

double cardano_root(double p, double q) {
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  if (disc < 0.0)
    throw Error(Errc::NegativeDiscriminant,
                "q^2/4 + p^3/27 = " + std::to_string(disc) + " for p = " + std::to_string(p));
  if (q == 0.0) return 0.0;  // t (t^2 + p) = 0 with p >= 0
  const double root_disc = std::sqrt(disc);

  // Take the cube root whose radicand does not cancel; the other follows
  // from u*w = -p/3.
  const double a = q > 0.0 ? -q / 2.0 - root_disc : -q / 2.0 + root_disc;
  const double u = std::cbrt(a);
  double t = u - p / (3.0 * u);

  const double f = t * t * t + p * t + q;
  const double df = 3.0 * t * t + p;
  if (df != 0.0) t -= f / df;
  return t;
}

CubicCoefficients adaptive_cubic(double v_hat_prev, double neighbour_dev, double spacing,
                                 const ControllerSpec& ctrl, const PhysicalParameters& params,
                                 const DomainGeometry& geom, double dt) {
  const double scale = 4.0 * params.epsilon / (ctrl.lambda * dt);
  CubicCoefficients c;
  c.p = scale * ((v_hat_prev + 2.0 * ctrl.k) / (2.0 * params.epsilon) + poincare_term(geom) +
                 1.0 / spacing);
  c.q = -scale / spacing * neighbour_dev;
  return c;
}

AdaptiveReport apply_adaptive(State& state, const Grid& grid, std::span<const BoundaryNode> nodes,
                              const ControllerSpec& ctrl, AdaptiveState& ada,
                              const PhysicalParameters& params, const DomainGeometry& geom) {
  if (ada.v_hat.size() != nodes.size())
    throw Error(Errc::ValidationError, "adaptive state size does not match boundary node count");

  NodeField& T = state.T;
  AdaptiveReport report;
  auto close = [&](std::size_t idx) {
    const BoundaryNode& n = nodes[idx];
    double& v_hat = ada.v_hat[idx];
    if (v_hat < 0.0)
      throw Error(Errc::NegativeDiscriminant, "v_hat < 0 at node (" + std::to_string(n.i) + "," +
                                                  std::to_string(n.j) + ")");
    const double nb_dev = T(n.nb_i, n.nb_j) - params.T_a;
    const auto [p, q] = adaptive_cubic(v_hat, nb_dev, n.normal_spacing(grid), ctrl, params, geom,
                                       grid.dt);
    const double dev = cardano_root(p, q);
    const double residual = std::abs(dev * dev * dev + p * dev + q) / (1.0 + std::abs(q));
    report.max_scaled_residual = std::max(report.max_scaled_residual, residual);
    T(n.i, n.j) = dev + params.T_a;
    v_hat += 0.5 * ctrl.lambda * grid.dt * dev * dev;
  };
  for (std::size_t idx = 0; idx < nodes.size(); ++idx)
    if (!is_vertical(nodes[idx].edge)) close(idx);
  for (std::size_t idx = 0; idx < nodes.size(); ++idx)
    if (is_vertical(nodes[idx].edge)) close(idx);
  return report;
}

std::vector<double> boundary_flux(const State& state, std::span<const BoundaryNode> nodes,
                                  const ControllerSpec& ctrl, const EdgeCoefficients& coeffs,
                                  const AdaptiveState& ada, const PhysicalParameters& params,
                                  const DomainGeometry& geom) {
  std::vector<double> flux(nodes.size(), 0.0);
  for (std::size_t idx = 0; idx < nodes.size(); ++idx) {
    const BoundaryNode& n = nodes[idx];
    const double dev = state.T(n.i, n.j) - params.T_a;
    switch (ctrl.kind) {
      case ControllerKind::OpenLoop:
        break;
      case ControllerKind::KnownWind:
        flux[idx] = -coeffs.of(n.edge) * dev;
        break;
      case ControllerKind::Adaptive:
        flux[idx] = kappa_adaptive(dev, ada.v_hat.at(idx), ctrl.k, params, geom);
        break;
    }
  }
  return flux;
}

}  // namespace wildfire
