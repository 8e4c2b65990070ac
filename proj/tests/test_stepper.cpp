#include <cmath>
#include <random>

#include "test_support.hpp"
#include "wildfire/stepper.hpp"

using namespace wildfire;
using test::code_of;

namespace {

Model reference_model(double dt = 0.01) {
  WindField w = WindField::constant(1.0, 0.0);
  return Model::make(test::square50(), 81, 80, dt, test::reference_params(), w);
}

ControllerSpec controller(ControllerKind kind) {
  return ControllerSpec{kind, 1.0, 0.1, 0.0};
}

double sum_block(const NodeField& T, int i0, int i1, int j0, int j1) {
  double s = 0.0;
  for (int i = i0; i <= i1; ++i)
    for (int j = j0; j <= j1; ++j) s += T(i, j);
  return s;
}

}  // namespace

TEST_CASE("ambient is a fixed point of every regime") {
  const Model m = reference_model();
  for (auto kind : {ControllerKind::OpenLoop, ControllerKind::KnownWind, ControllerKind::Adaptive}) {
    CAPTURE(to_string(kind));
    State s(m.grid, m.params.T_a, 1.0);
    AdaptiveState ada = AdaptiveState::uniform(m.nodes.size(), 0.0);
    for (int n = 1; n <= 20; ++n) step(s, ada, m, controller(kind), n);
    for (double v : s.T.values()) CHECK(v == doctest::Approx(m.params.T_a).epsilon(1e-12));
    for (double v : ada.v_hat) CHECK(v == 0.0);
  }
}

TEST_CASE("pure diffusion conserves heat in each closed block") {
  PhysicalParameters p = test::reference_params();
  p.A = 0.0;
  const Model m = Model::make(test::square50(), 81, 80, 0.01, p, WindField{});
  const Grid& g = m.grid;

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(300.0, 1300.0);
  State s(g, p.T_a, 1.0);
  for (double& v : s.T.values()) v = dist(rng);
  apply_outer_boundary(s, g);
  apply_open_loop(s, g);

  AdaptiveState ada;
  const ControllerSpec open = controller(ControllerKind::OpenLoop);
  for (int n = 1; n <= 50; ++n) {
    const double w_before = sum_block(s.T, g.n_star + 1, g.nx - 1, 1, g.ny - 1);
    const double u_before = sum_block(s.T, 1, g.n_star - 1, 1, g.ny - 1);
    double interface = 0.0;
    for (int j = 1; j <= g.ny - 1; ++j) interface += s.T(g.n_star, j) - s.T(g.n_star - 1, j);
    interface *= g.dt * p.epsilon / (g.delta1 * g.delta1);

    step(s, ada, m, open, n);
    const double w_after = sum_block(s.T, g.n_star + 1, g.nx - 1, 1, g.ny - 1);
    const double u_after = sum_block(s.T, 1, g.n_star - 1, 1, g.ny - 1);
    CHECK(std::abs(w_after - w_before) <= 1e-12 * std::abs(w_before));
    CHECK(std::abs((u_after - u_before) - interface) <= 1e-12 * std::abs(u_before));
  }
}

TEST_CASE("fuel is non-increasing and stays in [0, 1]") {
  PhysicalParameters p = test::reference_params();
  p.C_S = 50.0;
  const Model m = Model::make(test::square50(), 81, 80, 0.01, p, WindField::constant(1.0, 0.0));
  State s = gaussian_initial_condition(m.grid, p, 1000.0, 10.0, {25.0, 25.0});
  AdaptiveState ada;
  for (int n = 1; n <= 100; ++n) {
    const NodeField before = s.S;
    step(s, ada, m, controller(ControllerKind::KnownWind), n);
    for (std::size_t k = 0; k < before.values().size(); ++k) {
      CHECK(s.S.values()[k] <= before.values()[k]);
      CHECK(s.S.values()[k] >= 0.0);
    }
  }
  CHECK(s.S(40, 40) < 1.0);
}

TEST_CASE("blow-up guard reports the failing step") {
  const WindField w = WindField::constant(1.0, 0.0);
  const Model m =
      Model::make(test::square50(), 81, 80, 0.01, test::reference_params(), w, 1000.0);
  State s = gaussian_initial_condition(m.grid, m.params, 1000.0, 10.0, {25.0, 25.0});
  AdaptiveState ada;
  try {
    step(s, ada, m, controller(ControllerKind::OpenLoop), 7);
    FAIL("expected BlowupError");
  } catch (const BlowupError& e) {
    CHECK(e.code() == Errc::NumericalBlowup);
    CHECK(e.step() == 7);
  }
}

TEST_CASE("step counts and trace strides") {
  CHECK(step_count(20.0, 0.01) == 2000);
  CHECK(step_count(0.3, 0.1) == 3);
  CHECK(step_count(0.25, 0.1) == 3);

  const Model m = reference_model();
  const State init = gaussian_initial_condition(m.grid, m.params, 1000.0, 10.0, {25.0, 25.0});
  RunConfig cfg;
  cfg.t_final = 20.0;
  cfg.controller = controller(ControllerKind::KnownWind);

  const RunArtifacts a = run(init, cfg, m);
  CHECK(a.steps == 2000);
  CHECK(a.trace.times.size() == 2001);
  CHECK(a.trace.times.back() == doctest::Approx(20.0).epsilon(1e-12));
  CHECK_FALSE(a.trace.Z_values.has_value());
  CHECK(a.kappa.times.size() == 201);

  cfg.output_every = 100;
  const RunArtifacts b = run(init, cfg, m);
  CHECK(b.trace.times.size() == 21);
  CHECK(b.final_state == a.final_state);

  cfg.output_every = 0;
  CHECK(code_of([&] { run(init, cfg, m); }) == Errc::ValidationError);
}

TEST_CASE("runs are deterministic") {
  const Model m = reference_model();
  const State init = gaussian_initial_condition(m.grid, m.params, 1000.0, 10.0, {25.0, 25.0});
  RunConfig cfg;
  cfg.t_final = 2.0;
  cfg.controller = controller(ControllerKind::Adaptive);
  const RunArtifacts a = run(init, cfg, m);
  const RunArtifacts b = run(init, cfg, m);
  CHECK(a.final_state == b.final_state);
  CHECK(a.final_adaptive == b.final_adaptive);
  CHECK(a.trace.B_values == b.trace.B_values);
  CHECK(*a.trace.Z_values == *b.trace.Z_values);
}

TEST_CASE("adaptive estimates never decrease along a run") {
  const Model m = reference_model();
  const State init = gaussian_initial_condition(m.grid, m.params, 1000.0, 10.0, {25.0, 25.0});
  RunConfig cfg;
  cfg.t_final = 5.0;
  cfg.boundary_every = 1;
  cfg.controller = controller(ControllerKind::Adaptive);
  const RunArtifacts a = run(init, cfg, m);
  REQUIRE(a.v_hat.values.size() == 501);
  for (std::size_t n = 1; n < a.v_hat.values.size(); ++n)
    for (std::size_t k = 0; k < m.nodes.size(); ++k)
      CHECK(a.v_hat.values[n][k] >= a.v_hat.values[n - 1][k]);
  CHECK(a.max_cubic_residual <= 1e-10);
}

TEST_CASE("time-step advisory") {
  const Model m = reference_model();
  const auto& g = m.grid;
  const double rate = 2.0 * m.params.epsilon * (1.0 / (g.delta1 * g.delta1) +
                                                1.0 / (g.delta2 * g.delta2)) +
                      1.0 / g.delta1 + m.params.A * m.params.C;
  StabilityAdvisory a = stability_advisory(g, m.params, m.wind);
  CHECK(a.ok);
  CHECK(a.rate == doctest::Approx(rate).epsilon(1e-14));
  CHECK(a.courant == doctest::Approx(0.01 * rate).epsilon(1e-14));
  CHECK(a.courant < 0.05);

  const Model coarse = reference_model(1.0);
  a = stability_advisory(coarse.grid, coarse.params, coarse.wind);
  CHECK_FALSE(a.ok);
  CHECK(a.suggested_dt == doctest::Approx(1.0 / rate).epsilon(1e-14));

  PhysicalParameters still = m.params;
  still.epsilon = 0.0;
  a = stability_advisory(g, still, WindField{});
  CHECK(a.rate == doctest::Approx(m.params.A * m.params.C).epsilon(1e-14));
}
