#include "wildfire/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "wildfire/errors.hpp"

namespace wildfire {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Scenario <-> document

Model Scenario::model() const {
  return Model::make(geometry, nx, ny, dt, physics, wind, guard);
}

State Scenario::initial_state(const Grid& grid) const {
  if (ic.kind == InitialKind::Uniform) return State(grid, physics.T_a + ic.Tc, ic.S0);
  return gaussian_initial_condition(grid, physics, ic.Tc, ic.w, {ic.cx, ic.cy}, ic.S0);
}

RunConfig Scenario::run_config() const {
  RunConfig cfg;
  cfg.t_final = t_final;
  cfg.output_every = output_every;
  cfg.boundary_every = boundary_every;
  cfg.controller = controller;
  return cfg;
}

bool operator==(const Scenario& a, const Scenario& b) {
  auto tie_geom = [](const DomainGeometry& g) { return std::tie(g.L1, g.L2, g.w_frac); };
  auto tie_phys = [](const PhysicalParameters& p) {
    return std::tie(p.epsilon, p.A, p.C, p.C_S, p.gamma, p.T_a);
  };
  auto tie_wind = [](const WindField& w) { return std::tie(w.vx, w.vy, w.div_sup, w.v_bar); };
  auto tie_ctrl = [](const ControllerSpec& c) {
    return std::tie(c.kind, c.k, c.lambda, c.v_hat_init);
  };
  return tie_geom(a.geometry) == tie_geom(b.geometry) && a.nx == b.nx && a.ny == b.ny &&
         a.dt == b.dt && tie_phys(a.physics) == tie_phys(b.physics) &&
         tie_wind(a.wind) == tie_wind(b.wind) && a.ic == b.ic &&
         tie_ctrl(a.controller) == tie_ctrl(b.controller) && a.t_final == b.t_final &&
         a.output_every == b.output_every && a.boundary_every == b.boundary_every &&
         a.guard == b.guard;
}

std::string format_double(double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Entry {
  std::string value;
  int line = 0;
};

class Document {
 public:
  explicit Document(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  double number(const std::string& key) const {
    const Entry& e = require(key);
    double v = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
      throw Error(Errc::ParseError,
                  "line " + std::to_string(e.line) + ": " + key + " is not a decimal number");
    return v;
  }
  double number(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  int integer(const std::string& key) const {
    const Entry& e = require(key);
    int v = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
      throw Error(Errc::ParseError,
                  "line " + std::to_string(e.line) + ": " + key + " is not an integer");
    return v;
  }
  int integer(const std::string& key, int fallback) const {
    return has(key) ? integer(key) : fallback;
  }

  const std::string& word(const std::string& key) const { return require(key).value; }
  int line(const std::string& key) const { return require(key).line; }

 private:
  const Entry& require(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw Error(Errc::ParseError, "missing required key " + key);
    return it->second;
  }

  std::map<std::string, Entry> entries_;
};

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "geometry.L1",        "geometry.L2",   "geometry.w_frac",   "grid.nx",
      "grid.ny",            "grid.dt",       "physics.epsilon",   "physics.A",
      "physics.C",          "physics.C_S",   "physics.gamma",     "physics.T_a",
      "wind.vx",            "wind.vy",       "wind.div_sup",      "wind.v_bar",
      "ic.kind",            "ic.Tc",         "ic.w",              "ic.cx",
      "ic.cy",              "ic.S0",         "controller.kind",   "controller.k",
      "controller.lambda",  "controller.v_hat_init",              "run.t_final",
      "run.output_every",   "run.boundary_every",                 "run.guard",
  };
  return keys;
}

Document tokenize(std::string_view text) {
  std::map<std::string, Entry> entries;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty())
      throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": empty key or value");
    if (!known_keys().count(key))
      throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": unknown key " + key);
    if (entries.count(key))
      throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": duplicate key " + key);
    entries.emplace(key, Entry{value, line_no});
  }
  return Document(std::move(entries));
}

ControllerKind parse_controller_kind(const Document& doc) {
  const std::string& w = doc.word("controller.kind");
  if (w == "open_loop") return ControllerKind::OpenLoop;
  if (w == "feedback") return ControllerKind::KnownWind;
  if (w == "adaptive") return ControllerKind::Adaptive;
  throw Error(Errc::ParseError, "line " + std::to_string(doc.line("controller.kind")) +
                                    ": controller.kind must be open_loop, feedback or adaptive");
}

InitialKind parse_ic_kind(const Document& doc) {
  const std::string& w = doc.word("ic.kind");
  if (w == "gaussian") return InitialKind::Gaussian;
  if (w == "uniform") return InitialKind::Uniform;
  throw Error(Errc::ParseError, "line " + std::to_string(doc.line("ic.kind")) +
                                    ": ic.kind must be gaussian or uniform");
}

void validate(const Scenario& s) {
  try {
    const Model m = s.model();
    s.run_config().validate();
    if (!(s.ic.S0 >= 0.0 && s.ic.S0 <= 1.0))
      throw Error(Errc::ValidationError, "ic.S0 must lie in [0,1]");
    if (!std::isfinite(s.ic.Tc)) throw Error(Errc::ValidationError, "ic.Tc must be finite");
    if (s.ic.kind == InitialKind::Gaussian &&
        (!(s.ic.w > 0.0) || !std::isfinite(s.ic.cx) || !std::isfinite(s.ic.cy)))
      throw Error(Errc::ValidationError, "ic.w must be positive and the centre finite");
    if (s.controller.kind == ControllerKind::KnownWind)
      validate_feedback(m.grid, edge_coefficients(s.controller.k, s.physics, s.geometry, s.wind));
  } catch (const Error& e) {
    if (e.code() == Errc::ValidationError) throw;
    throw Error(Errc::ValidationError, e.what());
  }
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  const Document doc = tokenize(text);
  Scenario s;
  s.geometry.L1 = doc.number("geometry.L1");
  s.geometry.L2 = doc.number("geometry.L2");
  s.geometry.w_frac = doc.number("geometry.w_frac", 2.0 / 3.0);
  s.nx = doc.integer("grid.nx");
  s.ny = doc.integer("grid.ny");
  s.dt = doc.number("grid.dt");

  s.physics.epsilon = doc.number("physics.epsilon");
  s.physics.A = doc.number("physics.A");
  s.physics.C = doc.number("physics.C");
  s.physics.C_S = doc.number("physics.C_S", 0.0);
  s.physics.gamma = doc.number("physics.gamma");
  s.physics.T_a = doc.number("physics.T_a");

  s.wind.vx = doc.number("wind.vx", 0.0);
  s.wind.vy = doc.number("wind.vy", 0.0);
  s.wind.div_sup = doc.number("wind.div_sup", 0.0);
  s.wind.v_bar = doc.number("wind.v_bar", std::hypot(s.wind.vx, s.wind.vy));

  s.ic.kind = parse_ic_kind(doc);
  s.ic.Tc = doc.number("ic.Tc");
  if (s.ic.kind == InitialKind::Gaussian) {
    s.ic.w = doc.number("ic.w");
    s.ic.cx = doc.number("ic.cx");
    s.ic.cy = doc.number("ic.cy");
  } else {
    s.ic.w = doc.number("ic.w", s.ic.w);
    s.ic.cx = doc.number("ic.cx", s.ic.cx);
    s.ic.cy = doc.number("ic.cy", s.ic.cy);
  }
  s.ic.S0 = doc.number("ic.S0", 1.0);

  s.controller.kind = parse_controller_kind(doc);
  const bool controlled = s.controller.kind != ControllerKind::OpenLoop;
  const bool adaptive = s.controller.kind == ControllerKind::Adaptive;
  s.controller.k = controlled ? doc.number("controller.k") : doc.number("controller.k", 0.0);
  s.controller.lambda =
      adaptive ? doc.number("controller.lambda") : doc.number("controller.lambda", 0.0);
  s.controller.v_hat_init = doc.number("controller.v_hat_init", 0.0);

  s.t_final = doc.number("run.t_final");
  s.output_every = doc.integer("run.output_every", 1);
  s.boundary_every = doc.integer("run.boundary_every", 10);
  s.guard = doc.number("run.guard", 1e6);

  validate(s);
  return s;
}

Scenario load_scenario(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream out;
  auto put = [&](std::string_view key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  auto num = [&](std::string_view key, double v) { put(key, format_double(v)); };
  num("geometry.L1", s.geometry.L1);
  num("geometry.L2", s.geometry.L2);
  num("geometry.w_frac", s.geometry.w_frac);
  put("grid.nx", std::to_string(s.nx));
  put("grid.ny", std::to_string(s.ny));
  num("grid.dt", s.dt);
  num("physics.epsilon", s.physics.epsilon);
  num("physics.A", s.physics.A);
  num("physics.C", s.physics.C);
  num("physics.C_S", s.physics.C_S);
  num("physics.gamma", s.physics.gamma);
  num("physics.T_a", s.physics.T_a);
  num("wind.vx", s.wind.vx);
  num("wind.vy", s.wind.vy);
  num("wind.div_sup", s.wind.div_sup);
  num("wind.v_bar", s.wind.v_bar);
  put("ic.kind", s.ic.kind == InitialKind::Gaussian ? "gaussian" : "uniform");
  num("ic.Tc", s.ic.Tc);
  num("ic.w", s.ic.w);
  num("ic.cx", s.ic.cx);
  num("ic.cy", s.ic.cy);
  num("ic.S0", s.ic.S0);
  put("controller.kind", to_string(s.controller.kind));
  num("controller.k", s.controller.k);
  num("controller.lambda", s.controller.lambda);
  num("controller.v_hat_init", s.controller.v_hat_init);
  num("run.t_final", s.t_final);
  put("run.output_every", std::to_string(s.output_every));
  put("run.boundary_every", std::to_string(s.boundary_every));
  num("run.guard", s.guard);
  return out.str();
}

// ---------------------------------------------------------------------------
// Built-in scenarios

namespace {

// 2/3 is not a finite decimal; the nearest double is written with 17 digits.
// nx = 81 keeps the protected edge on column 54 (80 is not divisible by 3).
std::string base_text(std::string_view kind, std::string_view heat_loss) {
  std::string t;
  t += "# 50 m x 50 m domain, protected strip [2L1/3, L1] x [0, L2], wind (1, 0).\n";
  t += "geometry.L1 = 50\n";
  t += "geometry.L2 = 50\n";
  t += "geometry.w_frac = 0.66666666666666663\n";
  t += "grid.nx = 81\n";
  t += "grid.ny = 80\n";
  t += "grid.dt = 0.01\n";
  t += "physics.epsilon = 0.2136\n";
  t += "physics.A = 187.93\n";
  t += "physics.C = " + std::string(heat_loss) + "\n";
  t += "physics.C_S = 0\n";
  t += "physics.gamma = 558.49\n";
  t += "physics.T_a = 300\n";
  t += "wind.vx = 1\n";
  t += "wind.vy = 0\n";
  t += "wind.div_sup = 0\n";
  t += "wind.v_bar = 1\n";
  t += "ic.kind = gaussian\n";
  t += "ic.Tc = 1000\n";
  t += "ic.w = 10\n";
  t += "ic.cx = 25\n";
  t += "ic.cy = 25\n";
  t += "ic.S0 = 1\n";
  t += "controller.kind = " + std::string(kind) + "\n";
  t += "controller.k = 1\n";
  t += "controller.lambda = 0.1\n";
  t += "controller.v_hat_init = 0\n";
  t += "run.t_final = 20\n";
  t += "run.output_every = 1\n";
  t += "run.boundary_every = 10\n";
  t += "run.guard = 1e6\n";
  return t;
}

constexpr std::string_view kRegimes[] = {"open_loop", "feedback", "adaptive"};

}  // namespace

std::vector<std::string> scenario_names() {
  std::vector<std::string> names;
  for (auto prefix : {"reference_", "c_zero_"})
    for (auto r : kRegimes) names.push_back(std::string(prefix) + std::string(r));
  return names;
}

std::string builtin_scenario_text(std::string_view name) {
  for (auto r : kRegimes) {
    if (name == "reference_" + std::string(r)) return base_text(r, "7.2558e-4");
    if (name == "c_zero_" + std::string(r)) return base_text(r, "0");
  }
  throw Error(Errc::UnknownPreset, "no built-in scenario named " + std::string(name));
}

// ---------------------------------------------------------------------------
// CSV emission

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw Error(Errc::IoError, "write failed for " + path.string());
}

}  // namespace

void emit_field_csv(const State& state, const Grid& grid, const fs::path& path) {
  std::ofstream out = open_out(path);
  out << "x1,x2,T,S\n";
  for (int i = 0; i <= grid.nx; ++i)
    for (int j = 0; j <= grid.ny; ++j)
      out << format_double(grid.x1(i)) << ',' << format_double(grid.x2(j)) << ','
          << format_double(state.T(i, j)) << ',' << format_double(state.S(i, j)) << '\n';
  finish(out, path);
}

void emit_trace_csv(const EnergyTrace& trace, const fs::path& path) {
  std::ofstream out = open_out(path);
  out << "t,B,bound,Z\n";
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    out << format_double(trace.times[k]) << ',' << format_double(trace.B_values[k]) << ','
        << format_double(trace.bound_values[k]) << ',';
    if (trace.Z_values) out << format_double((*trace.Z_values)[k]);
    out << '\n';
  }
  finish(out, path);
}

void emit_bound_csv(const EnergyTrace& trace, const fs::path& path) {
  std::ofstream out = open_out(path);
  out << "t,bound\n";
  for (std::size_t k = 0; k < trace.times.size(); ++k)
    out << format_double(trace.times[k]) << ',' << format_double(trace.bound_values[k]) << '\n';
  finish(out, path);
}

void emit_boundary_csv(const BoundaryTrace& trace, const Model& model, Edge edge,
                       std::string_view column, const fs::path& path) {
  std::ofstream out = open_out(path);
  out << "t,i,j,x1,x2," << column << '\n';
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    const std::string t = format_double(trace.times[k]);
    for (std::size_t idx = 0; idx < model.nodes.size(); ++idx) {
      const BoundaryNode& n = model.nodes[idx];
      if (n.edge != edge) continue;
      out << t << ',' << n.i << ',' << n.j << ',' << format_double(model.grid.x1(n.i)) << ','
          << format_double(model.grid.x2(n.j)) << ',' << format_double(trace.values[k][idx])
          << '\n';
    }
  }
  finish(out, path);
}

std::vector<fs::path> write_run_outputs(const RunArtifacts& art, const Model& model,
                                        ControllerKind kind, const fs::path& out_dir) {
  std::vector<fs::path> written;
  const fs::path field = out_dir / "field_final.csv";
  emit_field_csv(art.final_state, model.grid, field);
  written.push_back(field);
  const fs::path trace = out_dir / "trace.csv";
  emit_trace_csv(art.trace, trace);
  written.push_back(trace);
  for (Edge e : kAllEdges) {
    const fs::path p = out_dir / ("kappa_" + std::string(to_string(e)) + ".csv");
    emit_boundary_csv(art.kappa, model, e, "kappa", p);
    written.push_back(p);
  }
  if (kind == ControllerKind::Adaptive) {
    for (Edge e : kAllEdges) {
      const fs::path p = out_dir / ("vhat_" + std::string(to_string(e)) + ".csv");
      emit_boundary_csv(art.v_hat, model, e, "v_hat", p);
      written.push_back(p);
    }
  }
  return written;
}

// ---------------------------------------------------------------------------
// Figure presets

std::vector<std::string> preset_names() {
  return {"fig1_ic",       "fig2_openloop", "fig2_feedback", "fig3_energy",
          "fig4_controls", "fig5_adaptive", "fig6_c_zero"};
}

namespace {

struct PresetRun {
  Model model;
  RunArtifacts art;
};

PresetRun run_builtin(const std::string& name, std::optional<int> output_every,
                      std::vector<double> snapshot_times = {}) {
  Scenario s = parse_scenario(builtin_scenario_text(name));
  if (output_every) s.output_every = *output_every;
  PresetRun r{s.model(), {}};
  RunConfig cfg = s.run_config();
  cfg.snapshot_times = std::move(snapshot_times);
  r.art = run(s.initial_state(r.model.grid), cfg, r.model);
  return r;
}

const Snapshot& final_snapshot(const RunArtifacts& art) {
  if (art.snapshots.empty()) throw Error(Errc::ValidationError, "run produced no snapshot");
  return art.snapshots.back();
}

}  // namespace

std::vector<fs::path> run_preset(std::string_view name, const fs::path& out_dir,
                                 std::optional<int> output_every) {
  std::vector<fs::path> written;
  auto emit_field = [&](const State& st, const Grid& g, const std::string& file) {
    emit_field_csv(st, g, out_dir / file);
    written.push_back(out_dir / file);
  };
  auto emit_trace = [&](const EnergyTrace& tr, const std::string& file) {
    emit_trace_csv(tr, out_dir / file);
    written.push_back(out_dir / file);
  };
  auto emit_bound = [&](const EnergyTrace& tr) {
    emit_bound_csv(tr, out_dir / "bound.csv");
    written.push_back(out_dir / "bound.csv");
  };

  if (name == "fig1_ic") {
    const Scenario s = parse_scenario(builtin_scenario_text("reference_feedback"));
    const Model m = s.model();
    emit_field(s.initial_state(m.grid), m.grid, "field_t0.csv");
  } else if (name == "fig2_openloop" || name == "fig2_feedback") {
    const std::string scen = name == "fig2_openloop" ? "reference_open_loop" : "reference_feedback";
    const Scenario s = parse_scenario(builtin_scenario_text(scen));
    const PresetRun r = run_builtin(scen, output_every, {s.t_final});
    emit_field(final_snapshot(r.art).state, r.model.grid, "field_t20.csv");
  } else if (name == "fig3_energy" || name == "fig6_c_zero") {
    const std::string prefix = name == "fig3_energy" ? "reference_" : "c_zero_";
    const bool snapshots = name == "fig6_c_zero";
    for (auto regime : kRegimes) {
      const std::string scen = prefix + std::string(regime);
      const Scenario s = parse_scenario(builtin_scenario_text(scen));
      const PresetRun r =
          run_builtin(scen, output_every, snapshots ? std::vector<double>{s.t_final}
                                                    : std::vector<double>{});
      emit_trace(r.art.trace, "trace_" + std::string(regime) + ".csv");
      if (regime == kRegimes[0]) emit_bound(r.art.trace);
      if (snapshots)
        emit_field(final_snapshot(r.art).state, r.model.grid,
                   "field_t20_" + std::string(regime) + ".csv");
    }
  } else if (name == "fig4_controls") {
    const PresetRun r = run_builtin("reference_feedback", output_every);
    for (Edge e : kAllEdges) {
      const fs::path p = out_dir / ("kappa_" + std::string(to_string(e)) + ".csv");
      emit_boundary_csv(r.art.kappa, r.model, e, "kappa", p);
      written.push_back(p);
    }
  } else if (name == "fig5_adaptive") {
    const PresetRun r = run_builtin("reference_adaptive", output_every);
    for (Edge e : kAllEdges) {
      const fs::path p = out_dir / ("vhat_" + std::string(to_string(e)) + ".csv");
      emit_boundary_csv(r.art.v_hat, r.model, e, "v_hat", p);
      written.push_back(p);
    }
    emit_trace(r.art.trace, "trace_adaptive.csv");
  } else {
    throw Error(Errc::UnknownPreset, "no preset named " + std::string(name));
  }
  return written;
}

}  // namespace wildfire
