/// @file io.cpp
/// @brief Flow snapshot / trajectory persistence ("ovallab-flow-1").
///
/// Snapshots are hand-composed CSV (two blocks for radial states), every
/// number %.17g so reads reproduce the exact doubles; the trajectory
/// manifest is JSON with the config echoed flat and the per-step scalars
/// in a sibling scalars.csv.  Nothing records wall time or hostnames:
/// rerunning the same build rewrites every file byte for byte.

#include "ovallab/profile_flow/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ovallab/core/csv.hpp"
#include "ovallab/core/errors.hpp"

namespace ovallab::flow {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string snapshot_name(size_t index) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "snapshot_%04zu.csv", index);
  return buf;
}

void append_full(std::string* out, double v) { *out += format_full(v); }

[[noreturn]] void bad_file(const std::string& path, const std::string& why) {
  throw LabError(ErrorKind::parse_error, path + ": " + why);
}

/// Line cursor over a whole file.
struct Lines {
  std::istringstream in;
  std::string path;
  explicit Lines(const std::string& p) : in(read_text_file(p)), path(p) {}
  bool next(std::string* line) { return static_cast<bool>(std::getline(in, *line)); }
  std::string expect(const char* what) {
    std::string line;
    if (!next(&line)) bad_file(path, std::string("missing ") + what);
    return line;
  }
};

double parse_double(const std::string& text, const std::string& path) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str()) bad_file(path, "bad number '" + text + "'");
  return v;
}

std::vector<double> split_row(const std::string& line,
                              const std::string& path) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos <= line.size()) {
    const size_t comma = line.find(',', pos);
    const size_t end = (comma == std::string::npos) ? line.size() : comma;
    out.push_back(parse_double(line.substr(pos, end - pos), path));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string value_after(const std::string& line, const std::string& prefix,
                        const std::string& path) {
  if (line.rfind(prefix, 0) != 0)
    bad_file(path, "expected '" + prefix + "...', got '" + line + "'");
  return line.substr(prefix.size());
}

std::string params_comment(const CylinderParams& p) {
  std::string s = "# params = ";
  s += std::to_string(p.n) + "," + std::to_string(p.k) + ",";
  append_full(&s, p.theta);
  s += ",";
  append_full(&s, p.big_l);
  return s;
}

void check_params(const std::string& line, const CylinderParams& p,
                  const std::string& path) {
  if (line != params_comment(p))
    bad_file(path, "cylinder parameters do not match the reader's");
}

const char* backend_name(FlowBackend b) {
  return b == FlowBackend::radial ? "radial" : "grid2d";
}
FlowBackend backend_of(const std::string& s, const std::string& path) {
  if (s == "radial") return FlowBackend::radial;
  if (s == "grid2d") return FlowBackend::grid2d;
  bad_file(path, "unknown backend '" + s + "'");
}

const char* kind_name(InitialKind k) {
  return k == InitialKind::ellipsoidal ? "ellipsoidal" : "cylinder";
}
InitialKind kind_of(const std::string& s, const std::string& path) {
  if (s == "ellipsoidal") return InitialKind::ellipsoidal;
  if (s == "cylinder") return InitialKind::cylinder;
  bad_file(path, "unknown initial kind '" + s + "'");
}

}  // namespace

void write_radial_snapshot_csv(const std::string& path,
                               const ProfileState& state) {
  std::string out;
  out += std::string("# schema: ") + kFlowSchemaId + " radial\n";
  out += "# tau = ";
  append_full(&out, state.tau);
  out += "\n";
  out += params_comment(state.params) + "\n";
  out += "# overlap = ";
  append_full(&out, state.overlap_lo);
  out += ",";
  append_full(&out, state.overlap_hi);
  out += "\n";
  out += "y,v\n";
  for (int i = 0; i < state.chart_v.n(); ++i) {
    append_full(&out, state.chart_v.x[i]);
    out += ",";
    append_full(&out, state.chart_v.f[i]);
    out += "\n";
  }
  if (state.has_chart_y()) {
    out += "v,Y\n";
    for (int j = 0; j < state.chart_y.n(); ++j) {
      append_full(&out, state.chart_y.x[j]);
      out += ",";
      append_full(&out, state.chart_y.f[j]);
      out += "\n";
    }
  }
  write_text_file(path, out);
}

ProfileState read_radial_snapshot_csv(const std::string& path,
                                      const CylinderParams& params) {
  Lines lines(path);
  const std::string schema = lines.expect("schema line");
  if (schema != std::string("# schema: ") + kFlowSchemaId + " radial")
    bad_file(path, "not a radial snapshot of this schema");
  ProfileState state;
  state.params = params;
  state.tau =
      parse_double(value_after(lines.expect("tau"), "# tau = ", path), path);
  check_params(lines.expect("params"), params, path);
  const std::string overlap =
      value_after(lines.expect("overlap"), "# overlap = ", path);
  const auto ov = split_row(overlap, path);
  if (ov.size() != 2) bad_file(path, "overlap needs two values");
  state.overlap_lo = ov[0];
  state.overlap_hi = ov[1];
  if (lines.expect("chart header") != "y,v")
    bad_file(path, "expected the outer-chart block");
  std::string line;
  bool in_tip = false;
  while (lines.next(&line)) {
    if (line.empty()) continue;
    if (line == "v,Y") {
      in_tip = true;
      continue;
    }
    const auto row = split_row(line, path);
    if (row.size() != 2) bad_file(path, "chart rows need two values");
    Chart1D& chart = in_tip ? state.chart_y : state.chart_v;
    chart.x.push_back(row[0]);
    chart.f.push_back(row[1]);
  }
  if (state.chart_v.n() < 2) bad_file(path, "outer chart missing");
  return state;
}

void write_grid_snapshot_csv(const std::string& path,
                             const GridProfileState& state) {
  std::string out;
  out += std::string("# schema: ") + kFlowSchemaId + " grid\n";
  out += "# tau = ";
  append_full(&out, state.tau);
  out += "\n";
  out += params_comment(state.params) + "\n";
  out += "# h = ";
  append_full(&out, state.h);
  out += ", m = " + std::to_string(state.m) + ", v_floor = ";
  append_full(&out, state.v_floor);
  out += "\n";
  for (int j = 0; j < state.m; ++j) {
    for (int i = 0; i < state.m; ++i) {
      if (i) out += ",";
      append_full(&out, state.at(i, j));
    }
    out += "\n";
  }
  write_text_file(path, out);
}

GridProfileState read_grid_snapshot_csv(const std::string& path,
                                        const CylinderParams& params) {
  Lines lines(path);
  const std::string schema = lines.expect("schema line");
  if (schema != std::string("# schema: ") + kFlowSchemaId + " grid")
    bad_file(path, "not a grid snapshot of this schema");
  GridProfileState state;
  state.params = params;
  state.tau =
      parse_double(value_after(lines.expect("tau"), "# tau = ", path), path);
  check_params(lines.expect("params"), params, path);
  const std::string disc = value_after(lines.expect("grid line"), "# h = ", path);
  // "<h>, m = <m>, v_floor = <f>"
  const size_t mpos = disc.find(", m = ");
  const size_t fpos = disc.find(", v_floor = ");
  if (mpos == std::string::npos || fpos == std::string::npos)
    bad_file(path, "malformed grid comment");
  state.h = parse_double(disc.substr(0, mpos), path);
  state.m = static_cast<int>(
      parse_double(disc.substr(mpos + 6, fpos - (mpos + 6)), path));
  state.v_floor = parse_double(disc.substr(fpos + 12), path);
  if (state.m < 3 || state.m % 2 == 0) bad_file(path, "bad grid size");
  state.v.reserve(static_cast<size_t>(state.m) * state.m);
  std::string line;
  while (lines.next(&line)) {
    if (line.empty()) continue;
    const auto row = split_row(line, path);
    if (static_cast<int>(row.size()) != state.m)
      bad_file(path, "grid row arity mismatch");
    state.v.insert(state.v.end(), row.begin(), row.end());
  }
  if (static_cast<int>(state.v.size()) != state.m * state.m)
    bad_file(path, "grid row count mismatch");
  state.mask.resize(state.v.size());
  for (size_t p = 0; p < state.v.size(); ++p)
    state.mask[p] = state.v[p] != 0.0 ? 1 : 0;
  return state;
}

void write_trajectory(const std::string& dir, const Trajectory& traj) {
  ensure_directory(dir);
  const FlowConfig& c = traj.config;

  ordered_json manifest;
  manifest["schema"] = kFlowSchemaId;
  ordered_json cfg;
  cfg["n"] = c.params.n;
  cfg["k"] = c.params.k;
  cfg["theta"] = c.params.theta;
  cfg["big_l"] = c.params.big_l;
  cfg["backend"] = backend_name(c.backend);
  cfg["initial_kind"] = kind_name(c.initial.kind);
  cfg["initial_d"] = c.initial.d;
  cfg["tau0"] = c.tau0;
  cfg["tau_end"] = c.tau_end;
  cfg["cfl"] = c.stepping.cfl;
  cfg["dtau_max"] = c.stepping.dtau_max;
  cfg["dtau_fixed"] = c.stepping.dtau_fixed;
  cfg["imex_chart_y"] = c.stepping.imex_chart_y;
  cfg["snapshot_cadence"] = c.snapshot_cadence;
  cfg["gauge_stride"] = c.gauge_stride;
  cfg["chart_tol_factor"] = c.chart_tol_factor;
  cfg["radial_dy"] = c.radial.dy;
  cfg["radial_n_chart_y"] = c.radial.n_chart_y;
  cfg["radial_cylinder_extent"] = c.radial.cylinder_extent;
  cfg["grid_h"] = c.grid.h;
  cfg["grid_r"] = c.grid.r;
  cfg["grid_margin"] = c.grid.margin;
  cfg["grid_v_floor_factor"] = c.grid.v_floor_factor;
  cfg["grid_min_mask_radius_cells"] = c.grid.min_mask_radius_cells;
  manifest["config"] = cfg;
  manifest["snapshot_taus"] = traj.snapshot_taus;

  std::vector<std::string> names;
  const size_t count = (c.backend == FlowBackend::radial)
                           ? traj.radial.size()
                           : traj.grid.size();
  for (size_t s = 0; s < count; ++s) names.push_back(snapshot_name(s));
  manifest["snapshots"] = names;
  write_text_file(dir + "/manifest.json", manifest.dump(1) + "\n");

  std::vector<std::vector<double>> rows;
  rows.reserve(traj.scalars.size());
  for (const StepScalars& s : traj.scalars)
    rows.push_back({static_cast<double>(s.step), s.tau, s.dtau, s.v_center,
                    s.y_tip, s.v_min, s.gauge_b});
  write_csv(dir + "/scalars.csv",
            {"step", "tau", "dtau", "v_center", "y_tip", "v_min", "gauge_b"},
            rows);

  for (size_t s = 0; s < count; ++s) {
    const std::string path = dir + "/" + names[s];
    if (c.backend == FlowBackend::radial)
      write_radial_snapshot_csv(path, traj.radial[s]);
    else
      write_grid_snapshot_csv(path, traj.grid[s]);
  }
}

Trajectory read_trajectory(const std::string& dir) {
  const std::string manifest_path = dir + "/manifest.json";
  ordered_json manifest;
  try {
    manifest = ordered_json::parse(read_text_file(manifest_path));
  } catch (const nlohmann::json::exception& e) {
    bad_file(manifest_path, e.what());
  }
  if (manifest.value("schema", "") != kFlowSchemaId)
    bad_file(manifest_path, "unknown schema");

  Trajectory traj;
  try {
    const ordered_json& cfg = manifest.at("config");
    FlowConfig c;
    c.params = make_cylinder_params(cfg.at("n").get<int>(),
                                    cfg.at("k").get<int>(),
                                    cfg.at("theta").get<double>(),
                                    cfg.at("big_l").get<double>());
    c.backend = backend_of(cfg.at("backend").get<std::string>(), manifest_path);
    c.initial.kind =
        kind_of(cfg.at("initial_kind").get<std::string>(), manifest_path);
    c.initial.d = cfg.at("initial_d").get<std::vector<double>>();
    c.tau0 = cfg.at("tau0").get<double>();
    c.tau_end = cfg.at("tau_end").get<double>();
    c.initial.tau_init = c.tau0;
    c.stepping.cfl = cfg.at("cfl").get<double>();
    c.stepping.dtau_max = cfg.at("dtau_max").get<double>();
    c.stepping.dtau_fixed = cfg.at("dtau_fixed").get<double>();
    c.stepping.imex_chart_y = cfg.at("imex_chart_y").get<bool>();
    c.snapshot_cadence = cfg.at("snapshot_cadence").get<double>();
    c.gauge_stride = cfg.at("gauge_stride").get<int>();
    c.chart_tol_factor = cfg.at("chart_tol_factor").get<double>();
    c.radial.dy = cfg.at("radial_dy").get<double>();
    c.radial.n_chart_y = cfg.at("radial_n_chart_y").get<int>();
    c.radial.cylinder_extent = cfg.at("radial_cylinder_extent").get<double>();
    c.grid.h = cfg.at("grid_h").get<double>();
    c.grid.r = cfg.at("grid_r").get<double>();
    c.grid.margin = cfg.at("grid_margin").get<double>();
    c.grid.v_floor_factor = cfg.at("grid_v_floor_factor").get<double>();
    c.grid.min_mask_radius_cells =
        cfg.at("grid_min_mask_radius_cells").get<int>();
    traj.config = c;
    traj.snapshot_taus =
        manifest.at("snapshot_taus").get<std::vector<double>>();

    std::vector<std::string> header;
    for (const auto& row : read_csv(dir + "/scalars.csv", &header)) {
      if (row.size() != 7) bad_file(dir + "/scalars.csv", "row arity");
      StepScalars s;
      s.step = static_cast<long>(row[0]);
      s.tau = row[1];
      s.dtau = row[2];
      s.v_center = row[3];
      s.y_tip = row[4];
      s.v_min = row[5];
      s.gauge_b = row[6];
      traj.scalars.push_back(s);
    }

    const auto names = manifest.at("snapshots").get<std::vector<std::string>>();
    if (names.size() != traj.snapshot_taus.size())
      bad_file(manifest_path, "snapshot list / tau list length mismatch");
    for (size_t s = 0; s < names.size(); ++s) {
      const std::string path = dir + "/" + names[s];
      if (c.backend == FlowBackend::radial) {
        traj.radial.push_back(read_radial_snapshot_csv(path, c.params));
        if (traj.radial.back().tau != traj.snapshot_taus[s])
          bad_file(path, "snapshot tau disagrees with the manifest");
      } else {
        traj.grid.push_back(read_grid_snapshot_csv(path, c.params));
        if (traj.grid.back().tau != traj.snapshot_taus[s])
          bad_file(path, "snapshot tau disagrees with the manifest");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    bad_file(manifest_path, e.what());
  }
  return traj;
}

}  // namespace ovallab::flow
