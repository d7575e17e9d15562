#pragma once

// Experiment assembly, snapshot records and on-disk outputs.
//
// Config files are flat `key = value` text, one entry per line, `#` starts a
// comment. Snapshot CSVs use the header
//   t,x,side,A,u,w,Q_net,Q_gross,p,A_gross
// with LF line endings, 17 significant digits and an empty `w` on the free
// segment.

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "aspir8/boundary.hpp"
#include "aspir8/physio.hpp"
#include "aspir8/scheme.hpp"
#include "aspir8/state.hpp"

namespace aspir8 {

enum class ExperimentKind { Insertion, Suction, Occlusion, Custom };
enum class LeftBoundary { Neumann, InletPressure };
enum class RightBoundary { Neumann, Reflection };
enum class DeviceBoundary { Neumann, FixedVelocity };
/// Which area equals A0 on the catheterized segment at t = 0: the gross
/// (vessel) area, leaving net A0 - A_c, or the net area itself.
enum class InitialArea { Gross, Net };

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Custom;
  std::size_t N = 400;
  double R0 = 0.5;      // cm
  double h0 = 0.05;     // cm
  double E = 3.0e6;     // dyne/cm^2
  double rho = 1.0;     // g/cm^3
  double P_ext = 0.0;   // dyne/cm^2
  double Rc = 0.1;      // cm
  double u_init = 254.65;  // cm/s
  double w_suction = 0.0;  // cm/s
  double R_T = 0.8;
  double t_end = 0.006;    // s
  std::vector<double> snapshot_times{0.002, 0.004, 0.006};
  InitialArea initial_area = InitialArea::Gross;
  std::string output_path = "out";
  LeftBoundary left_bc = LeftBoundary::Neumann;
  RightBoundary right_bc = RightBoundary::Neumann;
  DeviceBoundary device_bc = DeviceBoundary::Neumann;
  double p_in_amplitude = 8.0e4;  // dyne/cm^2
  double p_in_period = 1.0;       // s
  bool clamp_discriminant = false;

  /// Defaults of the named experiment.
  static ExperimentConfig defaults(ExperimentKind kind);

  /// Throws ConfigError naming the offending field.
  void validate() const;

  bool operator==(const ExperimentConfig&) const = default;
};

std::string to_string(ExperimentKind kind);

/// Parses config text. The `experiment` key selects the defaults; every other
/// key overrides them. Unknown keys and malformed values throw ConfigError.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);
/// Writes every key; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

struct Experiment {
  Grid grid;
  SimState state;
  BoundarySpec bc;
  VesselParams params;
  CatheterConfig cath;
};

Experiment build_experiment(const ExperimentConfig& config);

struct SnapshotRow {
  double t = 0.0;
  double x = 0.0;
  Side side = Side::Free;
  double A = 0.0;
  double u = 0.0;
  std::optional<double> w;  // catheterized segment only
  double Q_net = 0.0;
  double Q_gross = 0.0;
  double p = 0.0;
  double A_gross = 0.0;

  bool operator==(const SnapshotRow&) const = default;
};

struct Snapshot {
  double t = 0.0;
  std::vector<SnapshotRow> rows;

  bool operator==(const Snapshot&) const = default;
};

Snapshot make_snapshot(const SimState& state, const Grid& grid,
                       const VesselParams& params, const CatheterConfig& cath);

inline constexpr const char* kSnapshotHeader =
    "t,x,side,A,u,w,Q_net,Q_gross,p,A_gross";

void write_snapshot_csv(std::ostream& out, const Snapshot& snapshot);
/// Throws std::runtime_error with the offending line number on schema errors.
Snapshot read_snapshot_csv(std::istream& in);

/// Shortest text for a double with 17 significant digits.
std::string format_double(double value);

struct RunSummary {
  SimState final_state;
  std::vector<double> lambda_history;
  std::vector<double> dt_history;
  std::vector<std::filesystem::path> snapshot_files;
  std::filesystem::path manifest;
};

/// Runs the configured experiment and writes one CSV per snapshot time plus
/// manifest.json into config.output_path. On solver failure the manifest is
/// still written (status "failed") and the StepFailure is rethrown.
RunSummary run_experiment(
    const ExperimentConfig& config,
    const std::function<void(const StepReport&, const SimState&)>& on_step = {});

}  // namespace aspir8
