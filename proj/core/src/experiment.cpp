#include "aspir8/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "aspir8/errors.hpp"

namespace aspir8 {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    parts.push_back(item);
  }
  if (!s.empty() && s.back() == sep) {
    parts.emplace_back();
  }
  return parts;
}

double parse_double(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError(field + ": expected a number, got '" + text + "'");
  }
  return value;
}

std::size_t parse_size(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError(field + ": expected a non-negative integer, got '" + text +
                      "'");
  }
  return value;
}

bool parse_bool(const std::string& text, const std::string& field) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError(field + ": expected true or false, got '" + text + "'");
}

template <class Enum>
Enum parse_enum(const std::string& text, const std::string& field,
                std::initializer_list<std::pair<const char*, Enum>> names) {
  for (const auto& [name, value] : names) {
    if (text == name) return value;
  }
  throw ConfigError(field + ": unknown value '" + text + "'");
}

template <class Enum>
std::string enum_name(Enum value,
                      std::initializer_list<std::pair<const char*, Enum>> names) {
  for (const auto& [name, v] : names) {
    if (v == value) return name;
  }
  return "?";
}

const std::initializer_list<std::pair<const char*, ExperimentKind>> kKinds{
    {"insertion", ExperimentKind::Insertion},
    {"suction", ExperimentKind::Suction},
    {"occlusion", ExperimentKind::Occlusion},
    {"custom", ExperimentKind::Custom}};
const std::initializer_list<std::pair<const char*, LeftBoundary>> kLeft{
    {"neumann", LeftBoundary::Neumann},
    {"inlet_pressure", LeftBoundary::InletPressure}};
const std::initializer_list<std::pair<const char*, RightBoundary>> kRight{
    {"neumann", RightBoundary::Neumann},
    {"reflection", RightBoundary::Reflection}};
const std::initializer_list<std::pair<const char*, InitialArea>> kInitialArea{
    {"gross", InitialArea::Gross},
    {"net", InitialArea::Net}};
const std::initializer_list<std::pair<const char*, DeviceBoundary>> kDevice{
    {"neumann", DeviceBoundary::Neumann},
    {"fixed", DeviceBoundary::FixedVelocity}};

void require_positive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError(std::string(field) + " must be positive");
  }
}

const char* side_name(Side side) {
  return side == Side::Catheterized ? "catheterized" : "free";
}

}  // namespace

std::string to_string(ExperimentKind kind) { return enum_name(kind, kKinds); }

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                       std::chars_format::general, 17);
  return std::string(buf, ptr);
}

ExperimentConfig ExperimentConfig::defaults(ExperimentKind kind) {
  ExperimentConfig c;
  c.experiment = kind;
  switch (kind) {
    case ExperimentKind::Insertion:
    case ExperimentKind::Custom:
      break;
    case ExperimentKind::Suction:
      c.w_suction = -5000.0;
      c.t_end = 0.005;
      c.snapshot_times = {0.0025, 0.005};
      break;
    case ExperimentKind::Occlusion:
      c.w_suction = -1000.0;
      c.t_end = 0.5;
      c.left_bc = LeftBoundary::InletPressure;
      c.right_bc = RightBoundary::Reflection;
      c.snapshot_times.clear();
      for (int i = 0; i <= 100; ++i) {
        c.snapshot_times.push_back(0.005 * i);
      }
      break;
  }
  return c;
}

void ExperimentConfig::validate() const {
  if (N < 2) throw ConfigError("N must be at least 2");
  require_positive(R0, "R0");
  require_positive(h0, "h0");
  require_positive(E, "E");
  require_positive(rho, "rho");
  require_positive(t_end, "t_end");
  require_positive(p_in_period, "p_in_period");
  if (!(Rc >= 0.0 && Rc < R0)) throw ConfigError("Rc must satisfy 0 <= Rc < R0");
  if (!(R_T >= 0.0 && R_T <= 1.0)) throw ConfigError("R_T must lie in [0, 1]");
  if (!std::isfinite(u_init)) throw ConfigError("u_init must be finite");
  if (!std::isfinite(w_suction)) throw ConfigError("w_suction must be finite");
  for (double t : snapshot_times) {
    if (!(t >= 0.0 && t <= t_end)) {
      throw ConfigError("snapshot_times must lie in [0, t_end], got " +
                        format_double(t));
    }
  }
  if (output_path.empty()) throw ConfigError("output_path must not be empty");
}

ExperimentConfig parse_config(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    }
    entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }

  ExperimentKind kind = ExperimentKind::Custom;
  for (const auto& [key, value] : entries) {
    if (key == "experiment") kind = parse_enum(value, key, kKinds);
  }
  ExperimentConfig c = ExperimentConfig::defaults(kind);

  for (const auto& [key, value] : entries) {
    if (key == "experiment") continue;
    else if (key == "N") c.N = parse_size(value, key);
    else if (key == "R0") c.R0 = parse_double(value, key);
    else if (key == "h0") c.h0 = parse_double(value, key);
    else if (key == "E") c.E = parse_double(value, key);
    else if (key == "rho") c.rho = parse_double(value, key);
    else if (key == "P_ext") c.P_ext = parse_double(value, key);
    else if (key == "Rc") c.Rc = parse_double(value, key);
    else if (key == "u_init") c.u_init = parse_double(value, key);
    else if (key == "w_suction") c.w_suction = parse_double(value, key);
    else if (key == "R_T") c.R_T = parse_double(value, key);
    else if (key == "t_end") c.t_end = parse_double(value, key);
    else if (key == "snapshot_times") {
      c.snapshot_times.clear();
      if (!value.empty()) {
        for (const auto& item : split(value, ',')) {
          c.snapshot_times.push_back(parse_double(item, key));
        }
      }
    }
    else if (key == "output_path") c.output_path = value;
    else if (key == "left_bc") c.left_bc = parse_enum(value, key, kLeft);
    else if (key == "right_bc") c.right_bc = parse_enum(value, key, kRight);
    else if (key == "device_bc") c.device_bc = parse_enum(value, key, kDevice);
    else if (key == "initial_area") c.initial_area = parse_enum(value, key, kInitialArea);
    else if (key == "p_in_amplitude") c.p_in_amplitude = parse_double(value, key);
    else if (key == "p_in_period") c.p_in_period = parse_double(value, key);
    else if (key == "clamp_discriminant") c.clamp_discriminant = parse_bool(value, key);
    else throw ConfigError("unknown key '" + key + "'");
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file " + path.string());
  }
  return parse_config(in);
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream os;
  std::string times;
  for (std::size_t i = 0; i < c.snapshot_times.size(); ++i) {
    if (i) times += ", ";
    times += format_double(c.snapshot_times[i]);
  }
  os << "experiment = " << to_string(c.experiment) << "\n"
     << "N = " << c.N << "\n"
     << "R0 = " << format_double(c.R0) << "  # cm\n"
     << "h0 = " << format_double(c.h0) << "  # cm\n"
     << "E = " << format_double(c.E) << "  # dyne/cm^2\n"
     << "rho = " << format_double(c.rho) << "  # g/cm^3\n"
     << "P_ext = " << format_double(c.P_ext) << "  # dyne/cm^2\n"
     << "Rc = " << format_double(c.Rc) << "  # cm\n"
     << "u_init = " << format_double(c.u_init) << "  # cm/s\n"
     << "w_suction = " << format_double(c.w_suction) << "  # cm/s\n"
     << "R_T = " << format_double(c.R_T) << "\n"
     << "t_end = " << format_double(c.t_end) << "  # s\n"
     << "snapshot_times = " << times << "  # s\n"
     << "output_path = " << c.output_path << "\n"
     << "left_bc = " << enum_name(c.left_bc, kLeft) << "\n"
     << "right_bc = " << enum_name(c.right_bc, kRight) << "\n"
     << "device_bc = " << enum_name(c.device_bc, kDevice) << "\n"
     << "initial_area = " << enum_name(c.initial_area, kInitialArea) << "\n"
     << "p_in_amplitude = " << format_double(c.p_in_amplitude) << "  # dyne/cm^2\n"
     << "p_in_period = " << format_double(c.p_in_period) << "  # s\n"
     << "clamp_discriminant = " << (c.clamp_discriminant ? "true" : "false")
     << "\n";
  return os.str();
}

Experiment build_experiment(const ExperimentConfig& config) {
  config.validate();
  Experiment ex;
  ex.grid = Grid(config.N);
  const double A0 = std::numbers::pi * config.R0 * config.R0;
  ex.params = VesselParams::from_material(A0, config.E, config.h0, config.rho,
                                          config.P_ext);
  ex.cath.A_c = std::numbers::pi * config.Rc * config.Rc;
  ex.cath.tip_position = 0.0;
  ex.cath.suction_velocity = config.w_suction;
  ex.cath.validate(ex.params);

  const double A_cath =
      config.initial_area == InitialArea::Gross ? A0 - ex.cath.A_c : A0;
  ex.state = SimState::uniform(config.N, A_cath, config.u_init, config.w_suction,
                               A0, config.u_init);

  if (config.left_bc == LeftBoundary::InletPressure) {
    ex.bc.left =
        InletPressure{sinusoidal_pressure(config.p_in_amplitude, config.p_in_period)};
  }
  if (config.right_bc == RightBoundary::Reflection) {
    ex.bc.right = Reflection{config.R_T};
  }
  if (config.device_bc == DeviceBoundary::FixedVelocity) {
    ex.bc.device_left = FixedVelocity{config.w_suction};
  }
  ex.bc.validate();
  return ex;
}

Snapshot make_snapshot(const SimState& state, const Grid& grid,
                       const VesselParams& params, const CatheterConfig& cath) {
  Snapshot s;
  s.t = state.t;
  const std::size_t n = state.cells();
  s.rows.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    SnapshotRow r;
    r.t = state.t;
    r.x = grid.cath_center(i);
    r.side = Side::Catheterized;
    r.A = state.A_cath[i];
    r.u = state.u_cath[i];
    r.w = state.w[i];
    r.Q_net = r.A * r.u;
    r.Q_gross = r.Q_net + cath.A_c * state.w[i];
    r.p = pressure(r.A, Side::Catheterized, params, cath);
    r.A_gross = r.A + cath.A_c;
    s.rows.push_back(r);
  }
  for (std::size_t i = 0; i < n; ++i) {
    SnapshotRow r;
    r.t = state.t;
    r.x = grid.free_center(i);
    r.side = Side::Free;
    r.A = state.A_free[i];
    r.u = state.u_free[i];
    r.Q_net = r.A * r.u;
    r.Q_gross = r.Q_net;
    r.p = pressure(r.A, Side::Free, params, cath);
    r.A_gross = r.A;
    s.rows.push_back(r);
  }
  return s;
}

void write_snapshot_csv(std::ostream& out, const Snapshot& snapshot) {
  out << kSnapshotHeader << '\n';
  for (const SnapshotRow& r : snapshot.rows) {
    out << format_double(r.t) << ',' << format_double(r.x) << ','
        << side_name(r.side) << ',' << format_double(r.A) << ','
        << format_double(r.u) << ',' << (r.w ? format_double(*r.w) : "") << ','
        << format_double(r.Q_net) << ',' << format_double(r.Q_gross) << ','
        << format_double(r.p) << ',' << format_double(r.A_gross) << '\n';
  }
}

Snapshot read_snapshot_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSnapshotHeader) {
    throw std::runtime_error("snapshot csv line 1: unexpected header");
  }
  Snapshot s;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    const std::string where = "snapshot csv line " + std::to_string(lineno);
    if (fields.size() != 10) {
      throw std::runtime_error(where + ": expected 10 fields, got " +
                               std::to_string(fields.size()));
    }
    SnapshotRow r;
    try {
      r.t = parse_double(fields[0], "t");
      r.x = parse_double(fields[1], "x");
      if (fields[2] == "catheterized") {
        r.side = Side::Catheterized;
      } else if (fields[2] == "free") {
        r.side = Side::Free;
      } else {
        throw ConfigError("side: unknown value '" + fields[2] + "'");
      }
      r.A = parse_double(fields[3], "A");
      r.u = parse_double(fields[4], "u");
      if (!fields[5].empty()) r.w = parse_double(fields[5], "w");
      r.Q_net = parse_double(fields[6], "Q_net");
      r.Q_gross = parse_double(fields[7], "Q_gross");
      r.p = parse_double(fields[8], "p");
      r.A_gross = parse_double(fields[9], "A_gross");
    } catch (const ConfigError& e) {
      throw std::runtime_error(where + ": " + e.what());
    }
    s.rows.push_back(r);
  }
  if (!s.rows.empty()) s.t = s.rows.front().t;
  return s;
}

RunSummary run_experiment(
    const ExperimentConfig& config,
    const std::function<void(const StepReport&, const SimState&)>& on_step) {
  Experiment ex = build_experiment(config);
  const std::filesystem::path dir(config.output_path);
  std::filesystem::create_directories(dir);

  RunSummary summary;
  nlohmann::json snapshots = nlohmann::json::array();

  RunHooks hooks;
  hooks.snapshot_times = config.snapshot_times;
  hooks.on_snapshot = [&](double requested, const SimState& state) {
    const std::size_t index = summary.snapshot_files.size();
    char name[32];
    std::snprintf(name, sizeof(name), "snapshot_%04zu.csv", index);
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    write_snapshot_csv(out, make_snapshot(state, ex.grid, ex.params, ex.cath));
    if (!out) {
      throw std::runtime_error("failed to write " + path.string());
    }
    summary.snapshot_files.push_back(path);
    snapshots.push_back(
        {{"requested_time", requested}, {"time", state.t}, {"file", name}});
  };
  hooks.on_step = [&](const StepReport& report, const SimState& state) {
    summary.lambda_history.push_back(report.lambda);
    summary.dt_history.push_back(report.dt);
    if (on_step) on_step(report, state);
  };

  StepOptions options;
  options.riemann.clamp_negative_discriminant = config.clamp_discriminant;

  nlohmann::json manifest;
  std::map<std::string, std::string> config_entries;
  {
    std::istringstream is(serialize_config(config));
    std::string line;
    while (std::getline(is, line)) {
      const auto eq = line.find('=');
      auto value = line.substr(eq + 1);
      if (const auto hash = value.find('#'); hash != std::string::npos) {
        value.erase(hash);
      }
      config_entries[trim(line.substr(0, eq))] = trim(value);
    }
  }
  manifest["config"] = config_entries;
  manifest["derived"] = {{"A0", ex.params.A0},
                         {"beta", ex.params.beta},
                         {"A_c", ex.cath.A_c},
                         {"dx", ex.grid.dx()}};

  summary.manifest = dir / "manifest.json";
  auto write_manifest = [&] {
    manifest["steps"] = summary.dt_history.size();
    manifest["lambda_history"] = summary.lambda_history;
    manifest["dt_history"] = summary.dt_history;
    manifest["snapshots"] = snapshots;
    std::ofstream out(summary.manifest, std::ios::binary);
    out << manifest.dump(1) << '\n';
  };

  try {
    summary.final_state = run(ex.state, ex.grid, ex.bc, ex.params, ex.cath,
                              config.t_end, hooks, options);
  } catch (const StepFailure& e) {
    manifest["status"] = "failed";
    manifest["error"] = {{"time", e.time()}, {"message", e.what()}};
    write_manifest();
    throw;
  }
  manifest["status"] = "ok";
  manifest["final_time"] = summary.final_state.t;
  write_manifest();
  return summary;
}

}  // namespace aspir8
