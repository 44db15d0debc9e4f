#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "smqt/errors.hpp"
#include "smqt/runner.hpp"

using namespace smqt;

TEST_CASE("rows and snapshots follow their cadences and cover the endpoints") {
  RunConfig cfg = scenario_preset(Scenario::larmor);
  cfg.n_steps = 10;
  cfg.output_cadence = 3;
  cfg.snapshot_cadence = 5;

  std::vector<ObservableRow> streamed;
  const SnapshotSeries series =
      run(cfg, [&](const ObservableRow& r) { streamed.push_back(r); });

  REQUIRE(series.rows.size() == 5);  // steps 0, 3, 6, 9, 10
  CHECK(series.rows[0].t == 0.0);
  CHECK(series.rows[1].t == doctest::Approx(0.03).epsilon(1e-15));
  CHECK(series.rows[4].t == doctest::Approx(0.10).epsilon(1e-15));
  REQUIRE(series.snapshots.size() == 3);  // steps 0, 5, 10
  CHECK(series.snapshots[1].time == doctest::Approx(0.05).epsilon(1e-15));

  // the callback saw exactly the recorded rows, in order
  REQUIRE(streamed.size() == series.rows.size());
  for (std::size_t i = 0; i < streamed.size(); ++i) {
    CHECK(streamed[i].t == series.rows[i].t);
    CHECK(streamed[i].mx_mean == series.rows[i].mx_mean);
  }
}

TEST_CASE("initial observables match the uniform-state momentum counting") {
  RunConfig cfg = scenario_preset(Scenario::larmor);
  cfg.n_steps = 1;
  const SnapshotSeries series = run(cfg);
  const ObservableRow& first = series.rows.front();
  // s0 = 1 on 5 momentum nodes (dp = 1) over 8 channel nodes (dq = 1),
  // counting factor 1/(2 pi)
  const double w = 5.0 / (2.0 * std::numbers::pi);
  CHECK(first.total_charge == doctest::Approx(8.0 * w).epsilon(1e-14));
  CHECK(first.mx_mean == doctest::Approx(w).epsilon(1e-14));
  CHECK(first.my_mean == 0.0);
  CHECK(first.mz_mean == 0.0);
  CHECK(first.m_norm_mean == doctest::Approx(w).epsilon(1e-14));
  CHECK(first.phi_mid == 0.0);
}

TEST_CASE("strict mode rejects a time step above the advective bound") {
  RunConfig cfg = scenario_preset(Scenario::ballistic_drift);
  cfg.dt = 10.0;  // bound is 0.5 dq / p_max = 0.125
  cfg.n_steps = 1;
  try {
    run(cfg);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("stability bound") != std::string::npos);
  }
  cfg.cfl_strict = false;  // explicitly waived: the run proceeds
  const SnapshotSeries series = run(cfg);
  CHECK(series.rows.size() >= 2);
}

TEST_CASE("device potential feeds the reported midpoint sample") {
  RunConfig cfg;  // custom scenario, assembled by hand
  cfg.grid = {8, 5, 1, 0.0, 8.0, -2.0, 2.0, QBoundary::periodic};
  cfg.toggles = TermToggles::none();
  cfg.fields.v_device.kind = DevicePotential::Kind::barrier;
  cfg.fields.v_device.height = 2.0;
  cfg.fields.v_device.center = 4.0;  // the n_q/2 node
  cfg.fields.v_device.width = 1.0;
  cfg.dt = 0.01;
  cfg.n_steps = 2;
  const SnapshotSeries series = run(cfg);
  CHECK(series.rows.front().phi_mid == 2.0);
  CHECK(series.rows.back().phi_mid == 2.0);
  CHECK(series.rows.back().t == doctest::Approx(0.02).epsilon(1e-15));
}

TEST_CASE("repeated runs are bitwise identical") {
  RunConfig cfg = scenario_preset(Scenario::t2_decay);
  cfg.n_steps = 40;
  cfg.snapshot_cadence = 40;
  const SnapshotSeries a = run(cfg);
  const SnapshotSeries b = run(cfg);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].t == b.rows[i].t);
    CHECK(a.rows[i].total_charge == b.rows[i].total_charge);
    CHECK(a.rows[i].mx_mean == b.rows[i].mx_mean);
    CHECK(a.rows[i].my_mean == b.rows[i].my_mean);
    CHECK(a.rows[i].mz_mean == b.rows[i].mz_mean);
    CHECK(a.rows[i].m_norm_mean == b.rows[i].m_norm_mean);
  }
  REQUIRE(a.snapshots.size() == 2);
  REQUIRE(b.snapshots.size() == 2);
  const SpinChargeState& fa = a.snapshots.back();
  const SpinChargeState& fb = b.snapshots.back();
  for (std::size_t k = 0; k < fa.s0.v.size(); ++k) {
    CHECK(fa.s0.v[k] == fb.s0.v[k]);
    for (int c = 0; c < 3; ++c) CHECK(fa.spin[c].v[k] == fb.spin[c].v[k]);
  }
}

TEST_CASE("prepare_run loads exactly what the config describes") {
  const RunConfig cfg = scenario_preset(Scenario::dp_narrowing);
  const RunSetup setup = prepare_run(cfg);
  CHECK(setup.grid.momentum_dims == 2);
  CHECK(setup.closure.kind == SelfEnergyClosure::Kind::relaxation_time);
  CHECK(setup.closure.relax.spin_isotropize);
  CHECK(setup.v_device.empty());
  CHECK(setup.initial.s0.conforms(setup.grid));
  // gaussian_p data is uniform along the channel
  CHECK(setup.initial.s0(0, 1, 1) == setup.initial.s0(3, 1, 1));
}
