#include "smqt/fields.hpp"

#include <cmath>

#include "smqt/moyal.hpp"

namespace smqt {

Vec3 vector_potential(Vec3 b_ext, double q) {
  // (1/2) B x (q, 0, 0); the x component vanishes identically
  return {0.0, 0.5 * b_ext.z * q, -0.5 * b_ext.y * q};
}

double scalar_hamiltonian(std::array<double, 2> p, double q, Vec3 b_ext,
                          double phi_at_q, double re_sigma_at_node) {
  const Vec3 a = vector_potential(b_ext, q);
  const Vec3 kin{p[0] + a.x, p[1] + a.y, a.z};
  return 0.5 * dot(kin, kin) - phi_at_q + 0.5 * re_sigma_at_node;
}

Vec3 effective_field(std::array<double, 2> p, double q, double e_at_q,
                     const FieldConfig& cfg) {
  (void)q;
  const double alpha =
      cfg.rashba_field_scaled ? cfg.alpha_rashba * e_at_q : cfg.alpha_rashba;
  const double px = p[0], py = p[1];
  const Vec3 so{-2.0 * (alpha * py + cfg.beta_dresselhaus * px),
                -2.0 * (-alpha * px - cfg.beta_dresselhaus * py), 0.0};
  return cfg.zeeman_scale * cfg.b_ext + so;
}

std::vector<double> electric_field(const std::vector<double>& phi, double e_ext,
                                   const ChannelGrid& grid) {
  std::vector<double> out;
  if (phi.empty()) {
    out.assign(grid.n_q, e_ext);
    return out;
  }
  channel_derivative(phi, grid, out);
  for (double& e : out) e = -e + e_ext;
  return out;
}

std::vector<double> device_potential_profile(const DevicePotential& dev,
                                             const ChannelGrid& grid) {
  std::vector<double> v(grid.n_q, 0.0);
  switch (dev.kind) {
    case DevicePotential::Kind::none:
      break;
    case DevicePotential::Kind::linear:
      for (int i = 0; i < grid.n_q; ++i)
        v[i] = dev.slope * (grid.q_at(i) - grid.q_min);
      break;
    case DevicePotential::Kind::barrier:
      for (int i = 0; i < grid.n_q; ++i) {
        const double d = grid.q_at(i) - dev.center;
        v[i] = dev.height * std::exp(-d * d / (2.0 * dev.width * dev.width));
      }
      break;
  }
  return v;
}

}  // namespace smqt
