#pragma once

// Classical Bloch reference model on the channel grid:
//   dM_x/dt = D lap M_x - M_x/T2 + gamma (M x B)_x
//   dM_y/dt = D lap M_y - M_y/T2 + gamma (M x B)_y
//   dM_z/dt = D lap M_z - (M_z - M0)/T1 + gamma (M x B)_z
// with the three-point Laplacian (periodic wrap, or zero ghosts on
// dirichlet_inflow channels). Note the handedness: this reference keeps the
// textbook +gamma M x B, while the phase-space equation precesses with
// +B_eff x M; limit comparisons identify rates by magnitude, |gamma B| with
// |B_eff| (hbar = 1).
//
// Shares the RK4 stepper with the transport module.

#include <array>
#include <vector>

#include "smqt/grid.hpp"
#include "smqt/integrate.hpp"
#include "smqt/phase_field.hpp"

namespace smqt {

struct BlochParams {
  double diffusion = 0.0;
  double t1 = 1.0;
  double t2 = 1.0;
  double gamma = 0.0;
  double m0 = 0.0;  // longitudinal equilibrium value
  Vec3 b{0.0, 0.0, 0.0};

  bool operator==(const BlochParams&) const = default;
};

struct BlochState {
  std::array<std::vector<double>, 3> m;  // n_q entries per component
  double time = 0.0;

  static BlochState zeros(const ChannelGrid& g) {
    BlochState s;
    for (auto& c : s.m) c.assign(g.n_q, 0.0);
    return s;
  }
};

BlochState bloch_rhs(const BlochState& state, const BlochParams& params,
                     const ChannelGrid& grid);

struct BlochSeries {
  std::vector<double> times;
  std::vector<BlochState> profiles;           // recorded at cadence
  std::vector<std::array<double, 3>> means;   // spatial mean of M per record
};

// Integrates n_steps of size dt, recording every `cadence` steps (and the
// initial and final states). cadence <= 0 records only endpoints.
BlochSeries bloch_run(const BlochState& initial, const BlochParams& params,
                      const ChannelGrid& grid, double dt, long n_steps,
                      long cadence);

// RK4 customization points.
inline double state_time(const BlochState& y) { return y.time; }
inline void set_state_time(BlochState& y, double t) { y.time = t; }
inline void accumulate_state(BlochState& y, double s, const BlochState& k) {
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < y.m[c].size(); ++i) y.m[c][i] += s * k.m[c][i];
}
inline BlochState axpy_state(const BlochState& y, double h, const BlochState& k) {
  BlochState out = y;
  accumulate_state(out, h, k);
  out.time = y.time + h;
  return out;
}

}  // namespace smqt
