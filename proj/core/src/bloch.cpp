#include "smqt/bloch.hpp"

#include <cmath>
#include <stdexcept>

namespace smqt {

namespace {

inline double laplacian_at(const std::vector<double>& f, const ChannelGrid& g,
                           int i) {
  const int n = g.n_q;
  const bool periodic = g.bc == QBoundary::periodic;
  const double fm = i > 0 ? f[i - 1] : (periodic ? f[n - 1] : 0.0);
  const double fp = i < n - 1 ? f[i + 1] : (periodic ? f[0] : 0.0);
  return (fm - 2.0 * f[i] + fp) / (g.dq * g.dq);
}

}  // namespace

BlochState bloch_rhs(const BlochState& state, const BlochParams& params,
                     const ChannelGrid& grid) {
  for (const auto& c : state.m)
    if (static_cast<int>(c.size()) != grid.n_q)
      throw std::invalid_argument("bloch_rhs: state size != n_q");

  BlochState d = BlochState::zeros(grid);
  d.time = 1.0;
  for (int i = 0; i < grid.n_q; ++i) {
    const Vec3 m{state.m[0][i], state.m[1][i], state.m[2][i]};
    const Vec3 prec = params.gamma * cross(m, params.b);
    d.m[0][i] = params.diffusion * laplacian_at(state.m[0], grid, i) -
                m.x / params.t2 + prec.x;
    d.m[1][i] = params.diffusion * laplacian_at(state.m[1], grid, i) -
                m.y / params.t2 + prec.y;
    d.m[2][i] = params.diffusion * laplacian_at(state.m[2], grid, i) -
                (m.z - params.m0) / params.t1 + prec.z;
  }
  return d;
}

BlochSeries bloch_run(const BlochState& initial, const BlochParams& params,
                      const ChannelGrid& grid, double dt, long n_steps,
                      long cadence) {
  if (params.t1 <= 0.0 || params.t2 <= 0.0)
    throw std::invalid_argument("bloch_run: T1 and T2 must be positive");
  if (dt <= 0.0) throw std::invalid_argument("bloch_run: dt must be positive");

  BlochSeries series;
  auto record = [&](const BlochState& s) {
    series.times.push_back(s.time);
    series.profiles.push_back(s);
    std::array<double, 3> mean{0.0, 0.0, 0.0};
    for (int c = 0; c < 3; ++c) {
      double sum = 0.0;
      for (double x : s.m[c]) sum += x;
      mean[c] = sum / static_cast<double>(grid.n_q);
    }
    series.means.push_back(mean);
  };

  BlochState y = initial;
  y.time = 0.0;
  record(y);
  auto rhs = [&](const BlochState& s) { return bloch_rhs(s, params, grid); };
  for (long step = 1; step <= n_steps; ++step) {
    y = rk4_step(y, dt, rhs);
    y.time = dt * static_cast<double>(step);
    if ((cadence > 0 && step % cadence == 0) || step == n_steps) record(y);
  }
  return series;
}

}  // namespace smqt
