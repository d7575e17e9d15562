#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "aspir8/errors.hpp"
#include "aspir8/experiment.hpp"
#include "test_support.hpp"

using namespace aspir8;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("aspir8_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ExperimentConfig parse(const std::string& text) {
  std::istringstream is(text);
  return parse_config(is);
}

}  // namespace

TEST_CASE("experiment defaults") {
  const Experiment ins = build_experiment(ExperimentConfig::defaults(ExperimentKind::Insertion));
  CHECK(ins.params.A0 == doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));
  CHECK(aspir8::testing::rel_err(ins.params.beta, 338513.750128653772168847670936) < 1e-12);
  CHECK(ins.cath.A_c == doctest::Approx(std::numbers::pi * 0.01).epsilon(1e-15));
  CHECK(ins.state.u_cath.front() == 254.65);
  // Undeformed vessel: gross area A0 on both segments, zero gauge pressure.
  CHECK(ins.state.A_cath.front() + ins.cath.A_c == doctest::Approx(ins.params.A0).epsilon(1e-15));
  CHECK(ins.state.A_free.front() == ins.params.A0);
  CHECK(std::abs(pressure(ins.state.A_cath.front(), Side::Catheterized, ins.params, ins.cath)) < 1e-9);
  ExperimentConfig net = ExperimentConfig::defaults(ExperimentKind::Insertion);
  net.initial_area = InitialArea::Net;
  CHECK(build_experiment(net).state.A_cath.front() == ins.params.A0);
  CHECK(ins.state.w.front() == 0.0);
  CHECK(ins.state.cells() == 400);

  const ExperimentConfig suction = ExperimentConfig::defaults(ExperimentKind::Suction);
  CHECK(suction.w_suction == -5000.0);
  CHECK(suction.Rc == 0.1);

  const ExperimentConfig occ = ExperimentConfig::defaults(ExperimentKind::Occlusion);
  CHECK(occ.t_end == 0.5);
  CHECK(occ.w_suction == -1000.0);
  CHECK(occ.R_T == 0.8);
  const Experiment ex = build_experiment(occ);
  CHECK(std::holds_alternative<InletPressure>(ex.bc.left));
  REQUIRE(std::holds_alternative<Reflection>(ex.bc.right));
  CHECK(std::get<Reflection>(ex.bc.right).R_T == 0.8);
  CHECK(std::get<InletPressure>(ex.bc.left).p_in(0.25) == doctest::Approx(8.0e4));
}

TEST_CASE("config parsing") {
  SUBCASE("experiment selects defaults, keys override") {
    const ExperimentConfig c = parse(
        "# suction run\nexperiment = suction\nw_suction = -10000  # cm/s\nN=200\n"
        "snapshot_times = 0.001, 0.002\n");
    CHECK(c.experiment == ExperimentKind::Suction);
    CHECK(c.w_suction == -10000.0);
    CHECK(c.N == 200);
    CHECK(c.snapshot_times == std::vector<double>{0.001, 0.002});
    CHECK(c.t_end == 0.005);
  }
  SUBCASE("errors name the field") {
    CHECK_THROWS_WITH_AS(parse("Rc = abc\n"), doctest::Contains("Rc"), ConfigError);
    CHECK_THROWS_WITH_AS(parse("colour = red\n"), doctest::Contains("colour"), ConfigError);
    CHECK_THROWS_WITH_AS(parse("just text\n"), doctest::Contains("line 1"), ConfigError);
    CHECK_THROWS_WITH_AS(parse("left_bc = wall\n"), doctest::Contains("left_bc"), ConfigError);
  }
  SUBCASE("validation") {
    CHECK_THROWS_WITH_AS(parse("Rc = 0.6\n").validate(), doctest::Contains("Rc"), ConfigError);
    CHECK_THROWS_WITH_AS(parse("N = 1\n").validate(), doctest::Contains("N"), ConfigError);
    CHECK_THROWS_WITH_AS(parse("R_T = 1.5\n").validate(), doctest::Contains("R_T"), ConfigError);
    CHECK_THROWS_WITH_AS(parse("rho = 0\n").validate(), doctest::Contains("rho"), ConfigError);
    CHECK_THROWS_WITH_AS(parse("t_end = 0.001\n").validate(),
                         doctest::Contains("snapshot_times"), ConfigError);
  }
}

TEST_CASE("config serialization round-trips") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    ExperimentConfig c = ExperimentConfig::defaults(static_cast<ExperimentKind>(i % 4));
    c.N = 2 + static_cast<std::size_t>(unit(rng) * 1000);
    c.R0 = 0.1 + unit(rng);
    c.Rc = c.R0 * unit(rng) * 0.9;
    c.E = 1e5 + 1e7 * unit(rng);
    c.u_init = 500.0 * (unit(rng) - 0.5);
    c.w_suction = -1e4 * unit(rng);
    c.R_T = unit(rng);
    c.t_end = 0.1 * unit(rng) + 1e-3;
    c.snapshot_times = {c.t_end * unit(rng), c.t_end};
    c.output_path = "runs/out_" + std::to_string(i);
    c.left_bc = i % 2 ? LeftBoundary::InletPressure : LeftBoundary::Neumann;
    c.right_bc = i % 3 ? RightBoundary::Reflection : RightBoundary::Neumann;
    c.device_bc = i % 5 ? DeviceBoundary::Neumann : DeviceBoundary::FixedVelocity;
    c.clamp_discriminant = i % 7 == 0;
    c.initial_area = i % 2 ? InitialArea::Net : InitialArea::Gross;
    CHECK(parse(serialize_config(c)) == c);
  }
}

TEST_CASE("snapshots") {
  const ExperimentConfig config = ExperimentConfig::defaults(ExperimentKind::Suction);
  const Experiment ex = build_experiment(config);
  const SimState s = run(ex.state, ex.grid, ex.bc, ex.params, ex.cath, 0.0005);
  const Snapshot snap = make_snapshot(s, ex.grid, ex.params, ex.cath);
  REQUIRE(snap.rows.size() == 800);
  for (const SnapshotRow& r : snap.rows) {
    if (r.side == Side::Free) {
      CHECK_FALSE(r.w.has_value());
      CHECK(r.Q_gross == r.Q_net);
      CHECK(r.A_gross == r.A);
      CHECK(r.x > 0.0);
    } else {
      REQUIRE(r.w.has_value());
      CHECK(r.Q_gross == doctest::Approx(r.Q_net + ex.cath.A_c * *r.w));
      CHECK(r.A_gross == doctest::Approx(r.A + ex.cath.A_c));
      CHECK(r.x < 0.0);
    }
  }

  std::ostringstream os;
  write_snapshot_csv(os, snap);
  const std::string text = os.str();
  CHECK(text.rfind("t,x,side,A,u,w,Q_net,Q_gross,p,A_gross\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.find(",free,") != std::string::npos);
  std::istringstream is(text);
  CHECK(read_snapshot_csv(is) == snap);
}

TEST_CASE("snapshot csv errors carry line numbers") {
  std::istringstream bad_header("t,x,A\n");
  CHECK_THROWS_WITH(read_snapshot_csv(bad_header), doctest::Contains("line 1"));
  std::istringstream bad_row(std::string(kSnapshotHeader) + "\n0,1,free,0.7,1,,1,1,0\n");
  CHECK_THROWS_WITH(read_snapshot_csv(bad_row), doctest::Contains("line 2"));
  std::istringstream bad_side(std::string(kSnapshotHeader) + "\n0,1,left,0.7,1,,1,1,0,0.7\n");
  CHECK_THROWS_WITH(read_snapshot_csv(bad_side), doctest::Contains("line 2"));
}

TEST_CASE("format_double keeps 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(254.65) == "254.65000000000001");
  CHECK(format_double(-5000.0) == "-5000");
}

TEST_CASE("run_experiment outputs") {
  ExperimentConfig config = ExperimentConfig::defaults(ExperimentKind::Insertion);
  config.N = 100;
  config.output_path = scratch_dir("run_a").string();
  const RunSummary a = run_experiment(config);
  CHECK(a.snapshot_files.size() == config.snapshot_times.size());
  CHECK(a.final_state.t == config.t_end);
  CHECK(a.lambda_history.size() == a.dt_history.size());

  std::ifstream mf(a.manifest);
  const nlohmann::json manifest = nlohmann::json::parse(mf);
  CHECK(manifest["status"] == "ok");
  CHECK(manifest["steps"] == a.dt_history.size());
  CHECK(manifest["lambda_history"].size() == a.lambda_history.size());
  CHECK(manifest["snapshots"].size() == 3);
  CHECK(manifest["config"]["experiment"] == "insertion");

  ExperimentConfig again = config;
  again.output_path = scratch_dir("run_b").string();
  const RunSummary b = run_experiment(again);
  REQUIRE(b.snapshot_files.size() == a.snapshot_files.size());
  for (std::size_t i = 0; i < a.snapshot_files.size(); ++i) {
    CHECK(slurp(a.snapshot_files[i]) == slurp(b.snapshot_files[i]));
  }
}

TEST_CASE("occlusion comparison writes two manifests") {
  ExperimentConfig treated = ExperimentConfig::defaults(ExperimentKind::Occlusion);
  treated.N = 50;
  treated.t_end = 0.02;
  treated.snapshot_times = {0.0, 0.01, 0.02};
  treated.output_path = scratch_dir("occ_treated").string();
  ExperimentConfig untreated = treated;
  untreated.Rc = 0.0;
  untreated.w_suction = 0.0;
  untreated.output_path = scratch_dir("occ_untreated").string();
  const RunSummary t = run_experiment(treated);
  const RunSummary u = run_experiment(untreated);
  CHECK(fs::exists(t.manifest));
  CHECK(fs::exists(u.manifest));
  CHECK(t.manifest != u.manifest);
}

TEST_CASE("solver failure still writes a manifest") {
  ExperimentConfig config = ExperimentConfig::defaults(ExperimentKind::Custom);
  config.N = 50;
  config.Rc = 0.45;
  config.w_suction = -1.0e6;  // drains the tip far faster than the vessel can refill
  config.t_end = 0.01;
  config.snapshot_times = {};
  config.output_path = scratch_dir("failure").string();
  CHECK_THROWS_AS(run_experiment(config), SolverError);
  std::ifstream mf(fs::path(config.output_path) / "manifest.json");
  const nlohmann::json manifest = nlohmann::json::parse(mf);
  CHECK(manifest["status"] == "failed");
  CHECK(manifest["error"]["message"].get<std::string>().size() > 0);
}
