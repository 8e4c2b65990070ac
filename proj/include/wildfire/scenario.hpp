#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wildfire/boundary.hpp"
#include "wildfire/diagnostics.hpp"
#include "wildfire/stepper.hpp"

namespace wildfire {

enum class InitialKind { Gaussian, Uniform };

struct InitialCondition {
  InitialKind kind = InitialKind::Gaussian;
  double Tc = 0.0;  // amplitude above ambient, K
  double w = 1.0;   // Gaussian width, m
  double cx = 0.0;
  double cy = 0.0;
  double S0 = 1.0;  // uniform initial fuel fraction

  friend bool operator==(const InitialCondition&, const InitialCondition&) = default;
};

struct Scenario {
  DomainGeometry geometry;
  int nx = 0;
  int ny = 0;
  double dt = 0.0;
  PhysicalParameters physics;
  WindField wind;
  InitialCondition ic;
  ControllerSpec controller;
  double t_final = 0.0;
  int output_every = 1;
  int boundary_every = 10;
  double guard = 1e6;

  Model model() const;
  State initial_state(const Grid& grid) const;
  RunConfig run_config() const;
};

bool operator==(const Scenario& a, const Scenario& b);

/// Flat "section.key = value" document; '#' starts a comment. Unknown or
/// duplicate keys are a ParseError, range violations a ValidationError.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// Inverse of parse_scenario; every key is written, doubles with 17
/// significant digits.
std::string serialize_scenario(const Scenario& s);

/// Built-in scenario documents: reference_{open_loop,feedback,adaptive} and
/// c_zero_{open_loop,feedback,adaptive}.
std::vector<std::string> scenario_names();
std::string builtin_scenario_text(std::string_view name);

std::vector<std::string> preset_names();

/// Runs a figure preset and writes its CSVs into out_dir. Returns the paths
/// written, in emission order. Throws UnknownPreset.
std::vector<std::filesystem::path> run_preset(std::string_view name,
                                              const std::filesystem::path& out_dir,
                                              std::optional<int> output_every = std::nullopt);

/// Writes the artifacts of a scenario run: field_final.csv, trace.csv and
/// per-edge boundary traces.
std::vector<std::filesystem::path> write_run_outputs(const RunArtifacts& art, const Model& model,
                                                     ControllerKind kind,
                                                     const std::filesystem::path& out_dir);

/// 17 significant digits, shortest "%g" style.
std::string format_double(double v);

void emit_field_csv(const State& state, const Grid& grid, const std::filesystem::path& path);
void emit_trace_csv(const EnergyTrace& trace, const std::filesystem::path& path);
void emit_bound_csv(const EnergyTrace& trace, const std::filesystem::path& path);
/// Long format "t,i,j,x1,x2,<column>" restricted to one edge.
void emit_boundary_csv(const BoundaryTrace& trace, const Model& model, Edge edge,
                       std::string_view column, const std::filesystem::path& path);

}  // namespace wildfire
