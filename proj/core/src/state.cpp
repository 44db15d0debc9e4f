#include "smqt/state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace smqt {

double momentum_norm_constant(const PhaseSpaceGrid& g) {
  const double two_pi = 2.0 * std::numbers::pi;
  return g.momentum_dims == 2 ? 1.0 / (two_pi * two_pi) : 1.0 / two_pi;
}

namespace {

void check_init(double sigma_q, double sigma_p, Vec3 pol, const char* where) {
  if (!(sigma_q > 0.0))
    throw std::invalid_argument(std::string(where) + ": sigma_q must be > 0");
  if (!(sigma_p > 0.0))
    throw std::invalid_argument(std::string(where) + ": sigma_p must be > 0");
  if (dot(pol, pol) > 1.0 + 1e-12)
    throw std::invalid_argument(std::string(where) + ": |polarization| must be <= 1");
}

SpinChargeState from_profile(const PhaseSpaceGrid& grid, Vec3 pol,
                             const std::vector<double>& q_profile,
                             const std::vector<double>& p_profile) {
  SpinChargeState st = SpinChargeState::zeros(grid);
  for (int iq = 0; iq < grid.n_q; ++iq)
    for (int ipy = 0; ipy < grid.n_py(); ++ipy)
      for (int ipx = 0; ipx < grid.n_px(); ++ipx) {
        const double a = q_profile[iq] * p_profile[ipy * grid.n_px() + ipx];
        st.s0(iq, ipy, ipx) = a;
        st.spin[0](iq, ipy, ipx) = pol.x * a;
        st.spin[1](iq, ipy, ipx) = pol.y * a;
        st.spin[2](iq, ipy, ipx) = pol.z * a;
      }
  return st;
}

std::vector<double> gaussian_p_profile(const PhaseSpaceGrid& grid,
                                       std::array<double, 2> center_p,
                                       double sigma_p) {
  std::vector<double> prof(static_cast<std::size_t>(grid.n_py()) * grid.n_px());
  for (int ipy = 0; ipy < grid.n_py(); ++ipy)
    for (int ipx = 0; ipx < grid.n_px(); ++ipx) {
      const double dx = grid.p_at(ipx) - center_p[0];
      const double dy = grid.momentum_dims == 2 ? grid.py_at(ipy) - center_p[1] : 0.0;
      prof[ipy * grid.n_px() + ipx] =
          std::exp(-(dx * dx + dy * dy) / (2.0 * sigma_p * sigma_p));
    }
  return prof;
}

}  // namespace

SpinChargeState init_gaussian(const PhaseSpaceGrid& grid, double center_q,
                              std::array<double, 2> center_p, double sigma_q,
                              double sigma_p, Vec3 polarization,
                              double amplitude) {
  check_init(sigma_q, sigma_p, polarization, "init_gaussian");
  std::vector<double> qp(grid.n_q);
  for (int iq = 0; iq < grid.n_q; ++iq) {
    const double d = grid.q_at(iq) - center_q;
    qp[iq] = amplitude * std::exp(-d * d / (2.0 * sigma_q * sigma_q));
  }
  return from_profile(grid, polarization, qp,
                      gaussian_p_profile(grid, center_p, sigma_p));
}

SpinChargeState init_uniform(const PhaseSpaceGrid& grid, Vec3 polarization,
                             double amplitude) {
  check_init(1.0, 1.0, polarization, "init_uniform");
  std::vector<double> qp(grid.n_q, amplitude);
  std::vector<double> pp(static_cast<std::size_t>(grid.n_py()) * grid.n_px(), 1.0);
  return from_profile(grid, polarization, qp, pp);
}

SpinChargeState init_gaussian_p(const PhaseSpaceGrid& grid,
                                std::array<double, 2> center_p, double sigma_p,
                                Vec3 polarization, double amplitude) {
  check_init(1.0, sigma_p, polarization, "init_gaussian_p");
  std::vector<double> qp(grid.n_q, amplitude);
  return from_profile(grid, polarization, qp,
                      gaussian_p_profile(grid, center_p, sigma_p));
}

namespace {

// slack covers |polarization| = 1 rounding; not an evolution constraint
bool node_admissible(double s0, double sx, double sy, double sz) {
  if (!(s0 >= 0.0)) return false;
  const double spin2 = sx * sx + sy * sy + sz * sz;
  return spin2 <= s0 * s0 * (1.0 + 1e-12) + 1e-300;
}

}  // namespace

bool state_is_admissible(const SpinChargeState& state) {
  for (std::size_t i = 0; i < state.s0.v.size(); ++i)
    if (!node_admissible(state.s0.v[i], state.spin[0].v[i], state.spin[1].v[i],
                         state.spin[2].v[i]))
      return false;
  return true;
}

void validate_initial_state(const SpinChargeState& state) {
  for (std::size_t i = 0; i < state.s0.v.size(); ++i)
    if (!node_admissible(state.s0.v[i], state.spin[0].v[i], state.spin[1].v[i],
                         state.spin[2].v[i]))
      throw std::invalid_argument(
          "validate_initial_state: node " + std::to_string(i) +
          " violates s0 >= 0 and |spin| <= s0");
}

Moments moment_density(const SpinChargeState& state, const PhaseSpaceGrid& grid) {
  if (!state.s0.conforms(grid))
    throw std::invalid_argument("moment_density: state does not match grid");
  const double w = momentum_norm_constant(grid) * grid.dp_volume();
  Moments m;
  m.rho.assign(grid.n_q, 0.0);
  for (auto& c : m.mag) c.assign(grid.n_q, 0.0);
  for (int iq = 0; iq < grid.n_q; ++iq) {
    double r = 0.0, mx = 0.0, my = 0.0, mz = 0.0;
    for (int ipy = 0; ipy < grid.n_py(); ++ipy)
      for (int ipx = 0; ipx < grid.n_px(); ++ipx) {
        const std::size_t k = state.s0.index(iq, ipy, ipx);
        r += state.s0.v[k];
        mx += state.spin[0].v[k];
        my += state.spin[1].v[k];
        mz += state.spin[2].v[k];
      }
    m.rho[iq] = w * r;
    m.mag[0][iq] = w * mx;
    m.mag[1][iq] = w * my;
    m.mag[2][iq] = w * mz;
  }
  return m;
}

double total_charge(const std::vector<double>& rho, const PhaseSpaceGrid& grid) {
  double t = 0.0;
  for (double r : rho) t += r;
  return t * grid.dq;
}

double total_charge(const SpinChargeState& state, const PhaseSpaceGrid& grid) {
  return total_charge(moment_density(state, grid).rho, grid);
}

}  // namespace smqt
