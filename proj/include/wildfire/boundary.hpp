#pragma once

#include <span>
#include <vector>

#include "wildfire/geometry.hpp"
#include "wildfire/physics.hpp"

namespace wildfire {

enum class ControllerKind { OpenLoop, KnownWind, Adaptive };

const char* to_string(ControllerKind kind) noexcept;

struct ControllerSpec {
  ControllerKind kind = ControllerKind::OpenLoop;
  double k = 0.0;           // damping gain
  double lambda = 0.0;      // adaptation gain
  double v_hat_init = 0.0;  // uniform initial adaptation value

  void validate() const;
};

/// Adaptation parameter, one entry per protected-boundary node in
/// boundary_nodes() order.
struct AdaptiveState {
  std::vector<double> v_hat;

  static AdaptiveState uniform(std::size_t count, double value) {
    return AdaptiveState{std::vector<double>(count, value)};
  }
  friend bool operator==(const AdaptiveState&, const AdaptiveState&) = default;
};

/// Ghost-relation coefficients l such that the closed boundary satisfies
/// dT~/dn = -l T~ on each edge. For v = (1,0) these are the usual
/// l1 (left), l2 (right) and l3 (bottom/top).
struct EdgeCoefficients {
  double left = 0.0;
  double right = 0.0;
  double bottom = 0.0;
  double top = 0.0;

  double of(Edge e) const;
};

/// Known-wind feedback: [(n.v - 2k)/(2 eps) - 2 sup|x|/sup|x|^2] * T~.
double kappa_known(double T_tilde, double n_dot_v, double k, const PhysicalParameters& params,
                   const DomainGeometry& geom);

/// Adaptive feedback: -[(v_hat + 2k)/(2 eps) + 2 sup|x|/sup|x|^2] * T~.
double kappa_adaptive(double T_tilde, double v_hat, double k, const PhysicalParameters& params,
                      const DomainGeometry& geom);

EdgeCoefficients edge_coefficients(double k, const PhysicalParameters& params,
                                   const DomainGeometry& geom, const WindField& wind);

/// Throws DegenerateDenominator if 1 + delta*l <= 0 on any edge.
void validate_feedback(const Grid& grid, const EdgeCoefficients& coeffs);

/// Homogeneous Neumann copy on the outer boundary of the unprotected part.
void apply_outer_boundary(State& state, const Grid& grid);

/// Homogeneous Neumann copy on all four protected edges.
void apply_open_loop(State& state, const Grid& grid);

/// Known-wind closure: T~(node) = T~(neighbour) / (1 + delta*l).
void apply_feedback(State& state, const Grid& grid, std::span<const BoundaryNode> nodes,
                    const EdgeCoefficients& coeffs, const PhysicalParameters& params);

/// Real root of t^3 + p t + q = 0 for p >= 0 via Cardano's formula followed
/// by one Newton step. Throws NegativeDiscriminant if q^2/4 + p^3/27 < 0.
double cardano_root(double p, double q);

struct AdaptiveReport {
  /// max over nodes of |t^3 + p t + q| / (1 + |q|)
  double max_scaled_residual = 0.0;
};

/// Implicit adaptive closure. Solves the per-node cubic for T~ at time n
/// using v_hat at n-1, then advances v_hat by (lambda dt / 2) T~^2.
AdaptiveReport apply_adaptive(State& state, const Grid& grid, std::span<const BoundaryNode> nodes,
                              const ControllerSpec& ctrl, AdaptiveState& ada,
                              const PhysicalParameters& params, const DomainGeometry& geom);

/// Cubic coefficients of the adaptive closure at one node.
struct CubicCoefficients {
  double p = 0.0;
  double q = 0.0;
};
CubicCoefficients adaptive_cubic(double v_hat_prev, double neighbour_dev, double spacing,
                                 const ControllerSpec& ctrl, const PhysicalParameters& params,
                                 const DomainGeometry& geom, double dt);

/// Boundary heat flux kappa at each node in the current state.
std::vector<double> boundary_flux(const State& state, std::span<const BoundaryNode> nodes,
                                  const ControllerSpec& ctrl, const EdgeCoefficients& coeffs,
                                  const AdaptiveState& ada, const PhysicalParameters& params,
                                  const DomainGeometry& geom);

}  // namespace wildfire
