// aspir8: run and validate catheterized-vessel experiments.
//
//   aspir8 simulate --config <path> [--N <int>] [--t-end <s>] [--out <dir>]
//   aspir8 validate --config <path>
//
// Exit codes: 0 success, 2 config error, 3 solver failure.
// ASPIR8_LOG selects the log level (trace, debug, info, warn, error, off).

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "aspir8/errors.hpp"
#include "aspir8/experiment.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kSolverError = 3;

void configure_logging() {
  spdlog::set_pattern("[%H:%M:%S.%e] [%^%l%$] %v");
  if (const char* level = std::getenv("ASPIR8_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  } else {
    spdlog::set_level(spdlog::level::info);
  }
}

struct Overrides {
  std::optional<std::size_t> N;
  std::optional<double> t_end;
  std::optional<std::string> out;
};

aspir8::ExperimentConfig load(const std::string& path, const Overrides& o) {
  aspir8::ExperimentConfig config = aspir8::load_config(path);
  if (o.N) config.N = *o.N;
  if (o.t_end) {
    config.t_end = *o.t_end;
    std::erase_if(config.snapshot_times, [&](double t) { return t > *o.t_end; });
  }
  if (o.out) config.output_path = *o.out;
  config.validate();
  return config;
}

int simulate(const std::string& path, const Overrides& overrides) {
  aspir8::ExperimentConfig config;
  try {
    config = load(path, overrides);
  } catch (const aspir8::ConfigError& e) {
    spdlog::error("config: {}", e.what());
    return kConfigError;
  } catch (const aspir8::DomainError& e) {
    spdlog::error("config: {}", e.what());
    return kConfigError;
  }

  spdlog::info("experiment {} N={} t_end={} s -> {}",
               aspir8::to_string(config.experiment), config.N, config.t_end,
               config.output_path);
  std::size_t steps = 0;
  try {
    const auto summary = aspir8::run_experiment(
        config, [&](const aspir8::StepReport& r, const aspir8::SimState& s) {
          if (++steps % 5000 == 0) {
            spdlog::debug("step {} t={:.6f} lambda={:.3f} dt={:.3e}", steps, s.t,
                          r.lambda, r.dt);
          }
        });
    spdlog::info("done: {} steps, {} snapshots, manifest {}",
                 summary.dt_history.size(), summary.snapshot_files.size(),
                 summary.manifest.string());
  } catch (const aspir8::SolverError& e) {
    spdlog::error("solver failure: {}", e.what());
    return kSolverError;
  } catch (const aspir8::ConfigError& e) {
    spdlog::error("config: {}", e.what());
    return kConfigError;
  } catch (const aspir8::DomainError& e) {
    spdlog::error("config: {}", e.what());
    return kConfigError;
  }
  return 0;
}

int validate(const std::string& path) {
  try {
    const auto config = load(path, {});
    aspir8::build_experiment(config);
    std::cout << aspir8::serialize_config(config);
  } catch (const std::exception& e) {
    spdlog::error("config: {}", e.what());
    return kConfigError;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();

  CLI::App app{"One-dimensional blood flow with an aspiration catheter"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides overrides;
  std::size_t N = 0;
  double t_end = 0.0;
  std::string out;

  auto* sim = app.add_subcommand("simulate", "Run an experiment");
  sim->add_option("--config", config_path, "Config file")->required();
  auto* n_opt = sim->add_option("--N", N, "Cells per segment");
  auto* t_opt = sim->add_option("--t-end", t_end, "Final time (s)");
  auto* out_opt = sim->add_option("--out", out, "Output directory");

  std::string validate_path;
  auto* val = app.add_subcommand("validate", "Check a config file");
  val->add_option("--config", validate_path, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  if (*sim) {
    if (*n_opt) overrides.N = N;
    if (*t_opt) overrides.t_end = t_end;
    if (*out_opt) overrides.out = out;
    return simulate(config_path, overrides);
  }
  return validate(validate_path);
}
