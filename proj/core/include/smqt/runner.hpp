#pragma once

// Orchestration of a configured run: build grid/state/closure, check the
// CFL bound, integrate with RK4 (re-solving Poisson at every stage when
// self-consistent), and record observables and optional state snapshots.
// Time is stamped as step * dt.

#include <functional>
#include <vector>

#include "smqt/config.hpp"
#include "smqt/io.hpp"

namespace smqt {

struct SnapshotSeries {
  std::vector<ObservableRow> rows;
  std::vector<SpinChargeState> snapshots;  // at snapshot_cadence, plus t=0 and final
};

struct RunSetup {
  PhaseSpaceGrid grid;
  SpinChargeState initial;
  SelfEnergyClosure closure;
  std::vector<double> v_device;  // device potential samples (empty if none)
};

// Builds and validates everything a run needs (also used by tests to probe
// presets). Throws ConfigError / std::invalid_argument on bad input.
RunSetup prepare_run(const RunConfig& cfg);

// Per-row callback lets callers stream output before a potential abort;
// exceptions from integration propagate after the callback has seen every
// completed row.
using RowCallback = std::function<void(const ObservableRow&)>;

SnapshotSeries run(const RunConfig& cfg, const RowCallback& on_row = {});

// The stage RHS a run integrates: total potential = device + self-consistent
// Poisson (recomputed from the passed state each call when use_poisson).
SpinChargeState run_rhs(const SpinChargeState& state, const RunSetup& setup,
                        const RunConfig& cfg);

ObservableRow make_observable_row(const SpinChargeState& state,
                                  const PhaseSpaceGrid& grid,
                                  const std::vector<double>& phi_total);

}  // namespace smqt
