#include "smqt/runner.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "smqt/analysis.hpp"
#include "smqt/errors.hpp"
#include "smqt/poisson.hpp"
#include "smqt/transport.hpp"

namespace smqt {

namespace {

// total potential on the channel: self-consistent part plus the static
// device profile; empty when the run has neither
std::vector<double> total_potential(const SpinChargeState& state,
                                    const RunSetup& setup,
                                    const RunConfig& cfg) {
  std::vector<double> phi;
  if (cfg.fields.use_poisson) {
    const Moments m = moment_density(state, setup.grid);
    phi = solve_poisson(m.rho, cfg.poisson, setup.grid.channel());
  }
  if (!setup.v_device.empty()) {
    if (phi.empty()) return setup.v_device;
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] += setup.v_device[i];
  }
  return phi;
}

TransportOptions transport_options(const RunConfig& cfg) {
  TransportOptions opt;
  opt.lorentz_half_factor = cfg.lorentz_half_factor;
  return opt;
}

}  // namespace

RunSetup prepare_run(const RunConfig& cfg) {
  validate_config(cfg);
  RunSetup setup;
  setup.grid = make_grid(cfg.grid);

  switch (cfg.init.kind) {
    case InitConfig::Kind::uniform:
      setup.initial =
          init_uniform(setup.grid, cfg.init.polarization, cfg.init.amplitude);
      break;
    case InitConfig::Kind::gaussian:
      setup.initial = init_gaussian(
          setup.grid, cfg.init.center_q,
          {cfg.init.center_px, cfg.init.center_py}, cfg.init.sigma_q,
          cfg.init.sigma_p, cfg.init.polarization, cfg.init.amplitude);
      break;
    case InitConfig::Kind::gaussian_p:
      setup.initial = init_gaussian_p(
          setup.grid, {cfg.init.center_px, cfg.init.center_py},
          cfg.init.sigma_p, cfg.init.polarization, cfg.init.amplitude);
      break;
  }
  validate_initial_state(setup.initial);

  setup.closure.kind = cfg.closure.kind;
  setup.closure.relax = cfg.closure.relax;
  setup.closure.c_a = cfg.closure.c_a;
  if (cfg.closure.kind == SelfEnergyClosure::Kind::table)
    setup.closure.table = std::make_shared<const SelfEnergySet>(
        load_selfenergy_tables(cfg.closure.table_dir, setup.grid));

  if (cfg.fields.v_device.kind != DevicePotential::Kind::none)
    setup.v_device =
        device_potential_profile(cfg.fields.v_device, setup.grid.channel());
  return setup;
}

SpinChargeState run_rhs(const SpinChargeState& state, const RunSetup& setup,
                        const RunConfig& cfg) {
  return assemble_rhs(state, setup.grid, cfg.fields, setup.closure,
                      cfg.toggles, total_potential(state, setup, cfg),
                      transport_options(cfg));
}

ObservableRow make_observable_row(const SpinChargeState& state,
                                  const PhaseSpaceGrid& grid,
                                  const std::vector<double>& phi_total) {
  const Moments m = moment_density(state, grid);
  ObservableRow row;
  row.t = state.time;
  row.total_charge = total_charge(m.rho, grid);
  double sx = 0.0, sy = 0.0, sz = 0.0, sn = 0.0;
  for (int iq = 0; iq < grid.n_q; ++iq) {
    const double x = m.mag[0][iq], y = m.mag[1][iq], z = m.mag[2][iq];
    sx += x;
    sy += y;
    sz += z;
    sn += std::sqrt(x * x + y * y + z * z);
  }
  const double inv_n = 1.0 / static_cast<double>(grid.n_q);
  row.mx_mean = sx * inv_n;
  row.my_mean = sy * inv_n;
  row.mz_mean = sz * inv_n;
  row.m_norm_mean = sn * inv_n;
  row.phi_mid = phi_total.empty() ? 0.0 : phi_total[grid.n_q / 2];
  return row;
}

SnapshotSeries run(const RunConfig& cfg, const RowCallback& on_row) {
  const RunSetup setup = prepare_run(cfg);
  const TransportOptions opt = transport_options(cfg);

  SpinChargeState state = setup.initial;
  state.time = 0.0;
  std::vector<double> phi = total_potential(state, setup, cfg);

  if (cfg.cfl_strict) {
    const double limit = cfl_limit(setup.grid, cfg.fields, cfg.toggles, phi, opt);
    if (cfg.dt > limit) {
      std::ostringstream os;
      os << "run.dt = " << cfg.dt
         << " exceeds the advective stability bound " << limit;
      throw ConfigError(os.str());
    }
  }

  SnapshotSeries series;
  auto record_row = [&](const SpinChargeState& s,
                        const std::vector<double>& phi_now) {
    const ObservableRow row = make_observable_row(s, setup.grid, phi_now);
    if (on_row) on_row(row);
    series.rows.push_back(row);
  };

  record_row(state, phi);
  if (cfg.snapshot_cadence > 0) series.snapshots.push_back(state);

  auto rhs = [&](const SpinChargeState& s) { return run_rhs(s, setup, cfg); };
  const bool refresh_cfl =
      cfg.cfl_strict && cfg.fields.use_poisson && cfg.toggles.lorentz;

  for (long step = 1; step <= cfg.n_steps; ++step) {
    state = rk4_step(state, cfg.dt, rhs);
    state.time = cfg.dt * static_cast<double>(step);

    const bool want_row =
        step % cfg.output_cadence == 0 || step == cfg.n_steps;
    const bool want_snapshot =
        cfg.snapshot_cadence > 0 &&
        (step % cfg.snapshot_cadence == 0 || step == cfg.n_steps);

    if (want_row || want_snapshot || refresh_cfl)
      phi = total_potential(state, setup, cfg);

    if (refresh_cfl) {
      const double limit =
          cfl_limit(setup.grid, cfg.fields, cfg.toggles, phi, opt);
      if (cfg.dt > limit) {
        std::ostringstream os;
        os << "advective stability bound violated at step " << step
           << ": dt = " << cfg.dt << ", bound = " << limit;
        throw NumericalError(os.str());
      }
    }

    if (want_row) record_row(state, phi);
    if (want_snapshot) series.snapshots.push_back(state);
  }
  return series;
}

}  // namespace smqt
