#pragma once

// Coupled charge/spin distribution on phase space.
//
// s0 is the scalar (charge-sector) distribution and spin the three-component
// spin-density distribution; the magnetization field is the constant rescale
// M = g_s mu_B * spin, which in natural units (mu_B = 1/2) is (g_s/2) * spin.
// All transport coefficients are invariant under that rescale, so the state
// carries the bare fields.
//
// Position-space moments use the momentum normalization
//   c_norm = 1 / (2*pi)^momentum_dims
// (the natural-unit stand-in for the physical 1/(2*pi*hbar)^d counting factor):
//   rho(q)  = c_norm * sum_p s0(p,q)   * dp^d
//   mag_i(q)= c_norm * sum_p spin_i(p,q) * dp^d
// Sums run in fixed storage order (ipy outer, ipx inner) so reductions are
// bitwise reproducible.

#include <array>
#include <vector>

#include "smqt/phase_field.hpp"

namespace smqt {

struct SpinChargeState {
  PhaseField s0;
  VectorField spin;
  double time = 0.0;

  static SpinChargeState zeros(const PhaseSpaceGrid& g) {
    return {PhaseField::zeros(g), vector_zeros(g), 0.0};
  }
};

double momentum_norm_constant(const PhaseSpaceGrid& g);

// Gaussian wave-packet initial data:
//   s0(p,q)   = amplitude * exp(-(q-center_q)^2 / 2 sigma_q^2)
//                         * exp(-|p-center_p|^2 / 2 sigma_p^2)
//   spin(p,q) = polarization * s0(p,q)
// center_p.y is ignored on 1-D momentum grids. Requires sigma_q, sigma_p > 0
// and |polarization| <= 1 (so the state passes validate_initial_state).
SpinChargeState init_gaussian(const PhaseSpaceGrid& grid, double center_q,
                              std::array<double, 2> center_p,
                              double sigma_q, double sigma_p,
                              Vec3 polarization, double amplitude);

// Spatially and momentum-uniform state: s0 = amplitude everywhere.
SpinChargeState init_uniform(const PhaseSpaceGrid& grid, Vec3 polarization,
                             double amplitude);

// Uniform in q, Gaussian shell in p (homogeneous gas at rest or drifting).
SpinChargeState init_gaussian_p(const PhaseSpaceGrid& grid,
                                std::array<double, 2> center_p, double sigma_p,
                                Vec3 polarization, double amplitude);

// Physical admissibility at initialization time (not an evolution invariant):
// s0 >= 0 and |spin| <= s0 at every node, up to a 1e-12 relative slack for
// rounding in |polarization| = 1 data.
bool state_is_admissible(const SpinChargeState& state);
// Throws std::invalid_argument naming the first offending node if not.
void validate_initial_state(const SpinChargeState& state);

struct Moments {
  std::vector<double> rho;                  // n_q entries
  std::array<std::vector<double>, 3> mag;   // n_q entries each
};

Moments moment_density(const SpinChargeState& state, const PhaseSpaceGrid& grid);

// total charge = sum_q rho(q) * dq over stored nodes
double total_charge(const SpinChargeState& state, const PhaseSpaceGrid& grid);
double total_charge(const std::vector<double>& rho, const PhaseSpaceGrid& grid);

}  // namespace smqt
