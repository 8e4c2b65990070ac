#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "test_support.hpp"
#include "wildfire/scenario.hpp"

using namespace wildfire;
using test::code_of;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("wildfire_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string replace_line(std::string text, const std::string& key, const std::string& line) {
  const auto pos = text.find(key + " =");
  REQUIRE(pos != std::string::npos);
  const auto end = text.find('\n', pos);
  return text.replace(pos, end - pos, line);
}

}  // namespace

TEST_CASE("reference feedback scenario parses to its parameters") {
  const Scenario s = parse_scenario(builtin_scenario_text("reference_feedback"));
  CHECK(s.geometry.L1 == 50.0);
  CHECK(s.geometry.L2 == 50.0);
  CHECK(s.nx == 81);
  CHECK(s.ny == 80);
  CHECK(s.dt == 0.01);
  CHECK(s.physics.epsilon == 0.2136);
  CHECK(s.physics.A == 187.93);
  CHECK(s.physics.C == 7.2558e-4);
  CHECK(s.physics.gamma == 558.49);
  CHECK(s.physics.T_a == 300.0);
  CHECK(s.wind.vx == 1.0);
  CHECK(s.wind.vy == 0.0);
  CHECK(s.ic.Tc == 1000.0);
  CHECK(s.ic.w == 10.0);
  CHECK(s.ic.cx == 25.0);
  CHECK(s.ic.cy == 25.0);
  CHECK(s.controller.kind == ControllerKind::KnownWind);
  CHECK(s.controller.k == 1.0);
  CHECK(s.t_final == 20.0);
  CHECK(s.model().grid.n_star == 54);
}

TEST_CASE("scenario errors") {
  const std::string base = builtin_scenario_text("reference_feedback");
  CHECK(code_of([&] {
          parse_scenario(replace_line(base, "physics.epsilon", "physics.epsilon = -1"));
        }) == Errc::ValidationError);
  CHECK(code_of([&] { parse_scenario(base + "physics.viscosity = 1\n"); }) == Errc::ParseError);
  CHECK(code_of([&] { parse_scenario(base + "grid.nx = 81\n"); }) == Errc::ParseError);
  CHECK(code_of([&] {
          parse_scenario(replace_line(base, "physics.A", "physics.A = 1.8x"));
        }) == Errc::ParseError);
  CHECK(code_of([&] { parse_scenario(replace_line(base, "grid.dt", "# dropped")); }) ==
        Errc::ParseError);
  CHECK(code_of([&] { parse_scenario(replace_line(base, "grid.nx", "grid.nx = 80")); }) ==
        Errc::ValidationError);
  CHECK(code_of([&] {
          parse_scenario(replace_line(base, "controller.kind", "controller.kind = bangbang"));
        }) == Errc::ParseError);
  CHECK(code_of([] { load_scenario("/nonexistent/wildfire.scn"); }) == Errc::IoError);
  CHECK(code_of([] { builtin_scenario_text("nope"); }) == Errc::UnknownPreset);

  try {
    parse_scenario(base + "physics.viscosity = 1\n");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("physics.viscosity") != std::string::npos);
  }
}

TEST_CASE("scenarios survive a serialize round trip") {
  for (const auto& name : scenario_names()) {
    CAPTURE(name);
    const Scenario a = parse_scenario(builtin_scenario_text(name));
    const std::string text = serialize_scenario(a);
    const Scenario b = parse_scenario(text);
    CHECK(a == b);
    CHECK(serialize_scenario(b) == text);
  }
}

TEST_CASE("shipped scenario files match the built-ins") {
  const fs::path dir = fs::path(WILDFIRE_SOURCE_DIR) / "scenarios";
  for (const auto& name : scenario_names()) {
    CAPTURE(name);
    const fs::path file = dir / (name + ".scn");
    REQUIRE(fs::exists(file));
    CHECK(load_scenario(file) == parse_scenario(builtin_scenario_text(name)));
  }
}

TEST_CASE("field CSV layout") {
  const Grid g = build_grid({1.0, 1.0, 0.5}, 2, 2, 0.1);
  const State s(g, 300.0, 1.0);
  const fs::path dir = scratch_dir("field");
  emit_field_csv(s, g, dir / "a.csv");
  const std::string text = slurp(dir / "a.csv");
  const auto lines = lines_of(text);
  REQUIRE(lines.size() == 10);
  CHECK(lines[0] == "x1,x2,T,S");
  CHECK(lines[1] == "0,0,300,1");
  CHECK(lines[2] == "0,0.5,300,1");
  CHECK(lines[9] == "1,1,300,1");
  CHECK(text.find('\r') == std::string::npos);

  emit_field_csv(s, g, dir / "b.csv");
  CHECK(slurp(dir / "b.csv") == text);
}

TEST_CASE("trace CSV layout") {
  EnergyTrace tr;
  for (int n = 0; n <= 2000; ++n) {
    tr.times.push_back(n * 0.01);
    tr.B_values.push_back(1000.0 * std::exp(-0.03 * n * 0.01));
    tr.bound_values.push_back(decay_bound(1000.0, 0.0252, n * 0.01));
  }
  const fs::path dir = scratch_dir("trace");
  emit_trace_csv(tr, dir / "trace.csv");
  const auto lines = lines_of(slurp(dir / "trace.csv"));
  REQUIRE(lines.size() == 2002);
  CHECK(lines[0] == "t,B,bound,Z");
  CHECK(lines[1] == "0,1000,1000,");

  for (std::size_t k = 1; k < lines.size(); k += 97) {
    std::istringstream row(lines[k]);
    std::string t, b, bound;
    std::getline(row, t, ',');
    std::getline(row, b, ',');
    std::getline(row, bound, ',');
    CHECK(std::stod(bound) == doctest::Approx(1000.0 * std::exp(-0.0252 * std::stod(t)))
                                  .epsilon(1e-12));
  }

  tr.Z_values = tr.B_values;
  emit_trace_csv(tr, dir / "trace_z.csv");
  CHECK(lines_of(slurp(dir / "trace_z.csv"))[1] == "0,1000,1000,1000");

  emit_bound_csv(tr, dir / "bound.csv");
  const auto bl = lines_of(slurp(dir / "bound.csv"));
  CHECK(bl.size() == 2002);
  CHECK(bl[0] == "t,bound");
}

TEST_CASE("presets") {
  CHECK(code_of([] { run_preset("fig9", scratch_dir("bad")); }) == Errc::UnknownPreset);

  SUBCASE("initial field") {
    const fs::path dir = scratch_dir("fig1");
    const auto written = run_preset("fig1_ic", dir);
    REQUIRE(written.size() == 1);
    const auto lines = lines_of(slurp(written[0]));
    const Scenario s = parse_scenario(builtin_scenario_text("reference_open_loop"));
    const Grid g = s.model().grid;
    REQUIRE(lines.size() == static_cast<std::size_t>((g.nx + 1) * (g.ny + 1) + 1));

    double best_T = 0.0, best_x = 0.0, best_y = 0.0;
    for (std::size_t k = 1; k < lines.size(); ++k) {
      double x, y, T, S;
      char c;
      std::istringstream row(lines[k]);
      row >> x >> c >> y >> c >> T >> c >> S;
      if (T > best_T) best_T = T, best_x = x, best_y = y;
    }
    const double d2 = (best_x - 25.0) * (best_x - 25.0) + (best_y - 25.0) * (best_y - 25.0);
    // The peak is at a grid node nearest the centre (25, 25).
    CHECK(std::sqrt(d2) <= 0.5 * std::hypot(g.delta1, g.delta2) + 1e-12);
    CHECK(best_T == doctest::Approx(300.0 + 1000.0 * std::exp(-d2 / 200.0)).epsilon(1e-12));
    CHECK(best_T == doctest::Approx(1300.0).epsilon(0.5 / 1300.0));
  }

  SUBCASE("stride override shortens traces") {
    const fs::path dir = scratch_dir("fig3");
    const auto written = run_preset("fig3_energy", dir, 100);
    for (const auto& p : written) {
      if (p.filename().string().rfind("trace_", 0) == 0)
        CHECK(lines_of(slurp(p)).size() == 22);
    }
  }
}
