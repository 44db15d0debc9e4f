#pragma once

// External and effective single-particle fields.
//
// Gauge: A(q) = (1/2) B x q with the channel embedded along x, q = (q,0,0),
// so A = (0, b_z q / 2, -b_y q / 2) and A_x = 0 identically.
//
// Effective precession field (units of energy, hbar = 1):
//   B_eff = zeeman_scale * b_ext + B_so(p)
//   B_so  = -2 ( alpha p_y + beta p_x,  -alpha p_x - beta p_y,  0 )
// which reproduces the standard Rashba + Dresselhaus Hamiltonian
//   alpha (sigma_x p_y - sigma_y p_x) + beta (sigma_x p_x - sigma_y p_y)
// when written as -(1/2) sigma . B_so. B_so is odd in p. zeeman_scale
// defaults to g_s/2 (natural units; mu_B = 1/2).

#include <string>
#include <vector>

#include "smqt/phase_field.hpp"

namespace smqt {

struct DevicePotential {
  enum class Kind { none, linear, barrier };
  Kind kind = Kind::none;
  // linear: v(q) = slope * (q - q_min)
  double slope = 0.0;
  // barrier: v(q) = height * exp(-(q - center)^2 / (2 width^2))
  double height = 0.0;
  double center = 0.0;
  double width = 1.0;

  bool operator==(const DevicePotential&) const = default;
};

struct FieldConfig {
  Vec3 b_ext{0.0, 0.0, 0.0};
  double alpha_rashba = 0.0;
  double beta_dresselhaus = 0.0;
  double g_s = 2.0;
  double zeeman_scale = 1.0;  // g_s/2 unless overridden
  double e_ext = 0.0;         // uniform applied field along the channel
  // Scale alpha_rashba by the local channel field E(q) (gate-controlled
  // spin-orbit strength). Off by default.
  bool rashba_field_scaled = false;
  DevicePotential v_device;
  bool use_poisson = false;

  bool operator==(const FieldConfig&) const = default;
};

// A(q) for the channel embedding above.
Vec3 vector_potential(Vec3 b_ext, double q);

// H(p,q) = |p + A(q)|^2 / 2 - phi(q) + re_sigma/2; diagnostic scalar
// Hamiltonian (the transport terms carry their own printed coefficients).
double scalar_hamiltonian(std::array<double, 2> p, double q, Vec3 b_ext,
                          double phi_at_q, double re_sigma_at_node);

// Effective precession field at a node. e_at_q only matters when
// rashba_field_scaled is set.
Vec3 effective_field(std::array<double, 2> p, double q, double e_at_q,
                     const FieldConfig& cfg);

// E(q) = -dphi/dq + e_ext using the shared channel derivative kernel.
std::vector<double> electric_field(const std::vector<double>& phi,
                                   double e_ext, const ChannelGrid& grid);

// Samples of the static device potential on the channel nodes.
std::vector<double> device_potential_profile(const DevicePotential& dev,
                                             const ChannelGrid& grid);

}  // namespace smqt
