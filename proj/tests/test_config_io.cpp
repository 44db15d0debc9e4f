#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "smqt/config.hpp"
#include "smqt/errors.hpp"
#include "smqt/io.hpp"

using namespace smqt;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const char* leaf) {
  const fs::path dir = fs::temp_directory_path() / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string error_text(const std::string& config_text) {
  try {
    parse_config_text(config_text, "test.cfg");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

SpinChargeState irrational_state(const PhaseSpaceGrid& g) {
  SpinChargeState s = SpinChargeState::zeros(g);
  for (std::size_t k = 0; k < s.s0.v.size(); ++k) {
    const double x = static_cast<double>(k) + 1.0;
    s.s0.v[k] = 2.0 + std::sin(1.37 * x);
    s.spin[0].v[k] = 0.3 * std::cos(2.11 * x);
    s.spin[1].v[k] = 0.25 * std::sin(0.71 * x + 0.2);
    s.spin[2].v[k] = 1.0 / (3.0 + x);
  }
  return s;
}

}  // namespace

TEST_CASE("a bare scenario line reproduces the preset exactly") {
  const RunConfig parsed = parse_config_text("[run]\nscenario = larmor\n", "mem");
  CHECK(parsed == scenario_preset(Scenario::larmor));
}

TEST_CASE("file keys override the scenario base") {
  const RunConfig parsed = parse_config_text(
      "[run]\nscenario = larmor\ndt = 0.004\n[fields]\nb_ext_z = 2.5\n", "mem");
  RunConfig want = scenario_preset(Scenario::larmor);
  want.dt = 0.004;
  want.fields.b_ext.z = 2.5;
  want.closure.relax.relax_axis = {0.0, 0.0, 1.0};  // still the b direction
  CHECK(parsed == want);
}

TEST_CASE("parse errors carry the file name, line, and dotted key") {
  const std::string bad_key =
      "[run]\nscenario = larmor\nbogus_key = 1\n";
  const std::string msg = error_text(bad_key);
  CHECK(msg.find("test.cfg:3") != std::string::npos);
  CHECK(msg.find("run.bogus_key") != std::string::npos);

  CHECK(error_text("[nosuch]\nx = 1\n").find("nosuch") != std::string::npos);
  CHECK(error_text("[run]\nscenario larmor\n").find(":2") != std::string::npos);
  CHECK(error_text("[run]\nscenario = larmor\ndt = fast\n").find("dt") !=
        std::string::npos);
}

TEST_CASE("validation names the offending dotted key") {
  // a structurally complete config missing the time step
  const std::string text =
      "[grid]\nn_q = 8\nn_p = 5\nq_min = 0\nq_max = 8\np_min = -2\np_max = 2\n"
      "[run]\nn_steps = 10\n";
  CHECK(error_text(text).find("run.dt") != std::string::npos);

  RunConfig cfg = scenario_preset(Scenario::larmor);
  cfg.init.polarization = {1.2, 0.0, 0.0};
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg = scenario_preset(Scenario::larmor);
  cfg.closure.kind = SelfEnergyClosure::Kind::table;  // no table_dir
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
}

TEST_CASE("comments and blank lines are ignored") {
  const RunConfig parsed = parse_config_text(
      "# leading comment\n\n[run]\nscenario = larmor  # trailing\n\n", "mem");
  CHECK(parsed == scenario_preset(Scenario::larmor));
}

TEST_CASE("every preset survives the echo round trip unchanged") {
  const Scenario all[] = {
      Scenario::larmor,          Scenario::t2_decay,
      Scenario::t1_recovery,     Scenario::ballistic_drift,
      Scenario::bloch_limit,     Scenario::rashba_precession,
      Scenario::dp_narrowing,    Scenario::self_consistent_pileup};
  for (Scenario s : all) {
    const RunConfig cfg = scenario_preset(s);
    const RunConfig back = parse_config_text(format_config(cfg), "echo");
    CHECK(back == cfg);
  }
}

TEST_CASE("a heavily customized config also echoes faithfully") {
  RunConfig cfg = scenario_preset(Scenario::t2_decay);
  cfg.closure.relax.relax_axis = {0.6, 0.0, 0.8};
  cfg.closure.relax_axis_explicit = true;
  cfg.closure.relax.m_eq = {0.0, 0.1, 0.3};
  cfg.fields.v_device.kind = DevicePotential::Kind::barrier;
  cfg.fields.v_device.height = 1.5;
  cfg.fields.v_device.center = 4.0;
  cfg.fields.v_device.width = 0.8;
  cfg.lorentz_half_factor = false;
  cfg.init.kind = InitConfig::Kind::gaussian;
  cfg.init.center_q = 3.7;
  cfg.init.sigma_q = 1.1;
  cfg.init.center_px = 0.25;
  cfg.init.sigma_p = 0.9;
  cfg.init.polarization = {0.4, 0.3, 0.4};
  cfg.snapshot_cadence = 7;
  cfg.precision = 12;
  cfg.cfl_strict = false;
  cfg.poisson.epsilon = 2.5;
  validate_config(cfg);
  const RunConfig back = parse_config_text(format_config(cfg), "echo");
  CHECK(back == cfg);
  // and the echo of the echo is byte-stable
  CHECK(format_config(back) == format_config(cfg));
}

TEST_CASE("scenario names map to values and back") {
  const Scenario all[] = {
      Scenario::custom,          Scenario::larmor,
      Scenario::t2_decay,        Scenario::t1_recovery,
      Scenario::ballistic_drift, Scenario::bloch_limit,
      Scenario::rashba_precession, Scenario::dp_narrowing,
      Scenario::self_consistent_pileup};
  for (Scenario s : all) {
    const auto round = scenario_from_string(to_string(s));
    REQUIRE(round.has_value());
    CHECK(*round == s);
  }
  CHECK(!scenario_from_string("no_such_scenario").has_value());
}

TEST_CASE("snapshots round-trip bitwise") {
  const fs::path dir = fresh_dir("smqt_test_snapshot");

  const PhaseSpaceGrid g1 =
      make_grid({5, 4, 1, 0.0, 5.0, -2.0, 2.0, QBoundary::periodic});
  const SpinChargeState s1 = irrational_state(g1);
  const std::string p1 = (dir / "snap1.csv").string();
  write_snapshot(s1, g1, p1);
  const SpinChargeState r1 = read_snapshot(p1, g1);
  for (std::size_t k = 0; k < s1.s0.v.size(); ++k) {
    CHECK(r1.s0.v[k] == s1.s0.v[k]);
    for (int c = 0; c < 3; ++c) CHECK(r1.spin[c].v[k] == s1.spin[c].v[k]);
  }

  const PhaseSpaceGrid g2 =
      make_grid({4, 5, 2, 0.0, 4.0, -2.0, 2.0, QBoundary::periodic});
  const SpinChargeState s2 = irrational_state(g2);
  const std::string p2 = (dir / "snap2.csv").string();
  write_snapshot(s2, g2, p2);
  const SpinChargeState r2 = read_snapshot(p2, g2);
  for (std::size_t k = 0; k < s2.s0.v.size(); ++k)
    CHECK(r2.s0.v[k] == s2.s0.v[k]);

  // writing the same state twice is byte-identical
  const std::string p3 = (dir / "snap3.csv").string();
  write_snapshot(s1, g1, p3);
  CHECK(read_bytes(p1) == read_bytes(p3));
}

TEST_CASE("snapshot reading is strict about headers and shapes") {
  const fs::path dir = fresh_dir("smqt_test_snapshot_bad");
  const PhaseSpaceGrid g =
      make_grid({5, 4, 1, 0.0, 5.0, -2.0, 2.0, QBoundary::periodic});

  const fs::path bad_header = dir / "bad_header.csv";
  write_text(bad_header, "q,p,s0,sx,sy,sz\n0,0,1,0,0,0\n");
  CHECK_THROWS_AS(read_snapshot(bad_header.string(), g), ConfigError);

  const fs::path bad_row = dir / "bad_row.csv";
  write_text(bad_row, "q_index,p_x_index,s0,sx,sy,sz\n0,0,1,0,0\n");
  CHECK_THROWS_AS(read_snapshot(bad_row.string(), g), ConfigError);

  const fs::path bad_index = dir / "bad_index.csv";
  write_text(bad_index, "q_index,p_x_index,s0,sx,sy,sz\n9,0,1,0,0,0\n");
  CHECK_THROWS_AS(read_snapshot(bad_index.string(), g), ConfigError);

  // omitted nodes default to zero
  const fs::path sparse = dir / "sparse.csv";
  write_text(sparse, "q_index,p_x_index,s0,sx,sy,sz\n2,1,4.5,0.5,0,0\n");
  const SpinChargeState s = read_snapshot(sparse.string(), g);
  CHECK(s.s0(2, 0, 1) == 4.5);
  CHECK(s.spin[0](2, 0, 1) == 0.5);
  CHECK(s.s0(0, 0, 0) == 0.0);
}

TEST_CASE("observable rows keep the exact header and round-trip doubles") {
  CHECK(observables_header() ==
        "t,total_charge,mx_mean,my_mean,mz_mean,m_norm_mean,phi_mid");

  ObservableRow row;
  row.t = 0.30000000000000004;
  row.total_charge = 2.9590243202588403;
  row.mx_mean = -1.0 / 3.0;
  row.my_mean = 1e-17;
  row.mz_mean = std::acos(-1.0);
  row.m_norm_mean = 0.1;
  row.phi_mid = -0.0;
  const std::string line = format_observable_row(row);
  std::vector<double> cells;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const std::size_t comma = line.find(',', pos);
    const std::string cell = line.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    cells.push_back(std::strtod(cell.c_str(), nullptr));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  REQUIRE(cells.size() == 7);
  CHECK(cells[0] == row.t);
  CHECK(cells[1] == row.total_charge);
  CHECK(cells[2] == row.mx_mean);
  CHECK(cells[3] == row.my_mean);
  CHECK(cells[4] == row.mz_mean);
  CHECK(cells[5] == row.m_norm_mean);
  CHECK(cells[6] == row.phi_mid);

  const fs::path dir = fresh_dir("smqt_test_obs");
  const std::vector<ObservableRow> rows{row, ObservableRow{}};
  write_observables(rows, (dir / "a.csv").string());
  write_observables(rows, (dir / "b.csv").string());
  CHECK(read_bytes(dir / "a.csv") == read_bytes(dir / "b.csv"));
}

TEST_CASE("self-energy tables load sparsely with the spectral default") {
  const fs::path dir = fresh_dir("smqt_test_tables");
  const PhaseSpaceGrid g =
      make_grid({4, 5, 1, 0.0, 4.0, -2.0, 2.0, QBoundary::periodic});

  write_text(dir / "gamma_bar.csv",
             "p_x_index,q_index,value\n2,1,0.75\n0,3,1.25\n2,1,0.5\n");
  write_text(dir / "im_s0_r.csv", "p_x_index,q_index,value\n1,2,-0.625\n");

  const SelfEnergySet set = load_selfenergy_tables(dir.string(), g);
  CHECK(set.gamma_bar(1, 0, 2) == 0.5);  // duplicate rows: last wins
  CHECK(set.gamma_bar(3, 0, 0) == 1.25);
  CHECK(set.gamma_bar(0, 0, 0) == 0.0);
  CHECK(set.im_s0_r(2, 0, 1) == -0.625);
  // a_bar defaults to the spectral function of im_s0_r
  CHECK(set.a_bar(2, 0, 1) == 0.625);
  CHECK(set.a_bar(0, 0, 0) == 0.0);
  CHECK(set.sigma_less(0, 0, 0) == 0.0);  // absent file stays zero

  // an explicit a_bar suppresses the spectral derivation
  write_text(dir / "a_bar.csv", "p_x_index,q_index,value\n0,0,2.0\n");
  const SelfEnergySet explicit_a = load_selfenergy_tables(dir.string(), g);
  CHECK(explicit_a.a_bar(0, 0, 0) == 2.0);
  CHECK(explicit_a.a_bar(2, 0, 1) == 0.0);
}

TEST_CASE("self-energy table errors are config errors with locations") {
  const PhaseSpaceGrid g =
      make_grid({4, 5, 1, 0.0, 4.0, -2.0, 2.0, QBoundary::periodic});

  CHECK_THROWS_AS(load_selfenergy_tables("/no/such/dir", g), ConfigError);

  const fs::path range_dir = fresh_dir("smqt_test_tables_range");
  write_text(range_dir / "gamma_bar.csv", "p_x_index,q_index,value\n9,0,1.0\n");
  try {
    load_selfenergy_tables(range_dir.string(), g);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("out of range") != std::string::npos);
    CHECK(msg.find(":2") != std::string::npos);
  }

  const fs::path neg_dir = fresh_dir("smqt_test_tables_neg");
  write_text(neg_dir / "gamma_bar.csv", "p_x_index,q_index,value\n0,0,-0.5\n");
  try {
    load_selfenergy_tables(neg_dir.string(), g);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("gamma_bar") != std::string::npos);
  }
}
