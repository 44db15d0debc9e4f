#pragma once

// Right-hand side of the leading-order coupled charge/spin transport
// equations, assembled per term group (natural units, m* = e = hbar = 1,
// U_q = p_x + A_x, U_p = E + lf (v x B) with v = (p + A)/m*):
//
//   1  drift               -U_q d/dq F                    (upwind), F = s0, spin_i
//   2  lorentz             -U_p . grad_p F                (upwind); lf = 1/2 as
//                          printed, lorentz_half_factor=false restores 1
//   3  precession          +B_eff x spin                  (pointwise, spin only)
//   4a scattering_out      closure out-part
//   4b scattering_in       closure in-part
//   5  torque_gamma        -1/2 eps_ijk PB(gamma_j, spin_k)
//                          +1/4 eps_ijk PB(xi_less_j, a_vec_k)
//                          -gamma_vec * s0
//   6  re_sigma_corrections -1/2 PB(re_sigma_r, F) - 1/2 PB(sigma_less, re F_r)
//                          for F = spin_i (re_s_r) and s0 (re_s0_r)
//   7  re_xi_torque        +re_xi_r x spin + xi_less x re_s_r   (pointwise)
//   8  charge_coupling     spin_i <- -1/2 PB(B_eff_i, s0) - 1/2 PB(re_xi_r_i, s0)
//                          -1/2 PB(xi_less_i, re_s0_r) - xi_less_i * im_s0_r
//   9  scalar_spin_coupling s0 <- -1/2 sum_j PB(B_eff_j + re_xi_r_j, spin_j)
//                          -1/2 sum_j PB(xi_less_j, re_s_r_j)
//                          -gamma_vec . spin + c_a xi_less . a_vec
//
// Each enabled group is evaluated into a scratch field and accumulated in the
// fixed order above, so the RHS of a toggle set equals the sum of the
// single-toggle RHS evaluations bitwise.

#include <vector>

#include "smqt/fields.hpp"
#include "smqt/integrate.hpp"
#include "smqt/selfenergy.hpp"
#include "smqt/state.hpp"

namespace smqt {

struct TermToggles {
  bool drift = true;
  bool lorentz = true;
  bool precession = true;
  bool scattering_out = true;
  bool scattering_in = true;
  bool torque_gamma = false;
  bool re_sigma_corrections = false;
  bool re_xi_torque = false;
  bool charge_coupling = false;
  bool scalar_spin_coupling = false;

  bool operator==(const TermToggles&) const = default;

  static TermToggles none() {
    return {false, false, false, false, false, false, false, false, false, false};
  }
};

struct TransportOptions {
  bool lorentz_half_factor = true;
  bool check_finite = true;  // per-group non-finite scan, names the group

  bool operator==(const TransportOptions&) const = default;
};

// phi_total: total electrostatic potential on the channel nodes (device +
// self-consistent); empty means zero. Returns d/dt of the state fields with
// .time = 1 (unit rate; integrators scale it).
SpinChargeState assemble_rhs(const SpinChargeState& state,
                             const PhaseSpaceGrid& grid,
                             const FieldConfig& fields,
                             const SelfEnergyClosure& closure,
                             const TermToggles& toggles,
                             const std::vector<double>& phi_total,
                             const TransportOptions& opt = {});

// Ballistic preset: drift + lorentz + precession, no scattering.
SpinChargeState ballistic_rhs(const SpinChargeState& state,
                              const PhaseSpaceGrid& grid,
                              const FieldConfig& fields,
                              const std::vector<double>& phi_total = {},
                              const TransportOptions& opt = {});

// Advective stability bound 0.5 * min(dq / max|U_q|, dp / max|U_p|) over the
// grid, considering only enabled advective groups; +inf when none apply.
double cfl_limit(const PhaseSpaceGrid& grid, const FieldConfig& fields,
                 const TermToggles& toggles, const std::vector<double>& phi_total,
                 const TransportOptions& opt = {});

// RK4 customization points.
inline double state_time(const SpinChargeState& y) { return y.time; }
inline void set_state_time(SpinChargeState& y, double t) { y.time = t; }
inline void accumulate_state(SpinChargeState& y, double s,
                             const SpinChargeState& k) {
  add_scaled(y.s0, s, k.s0);
  for (int c = 0; c < 3; ++c) add_scaled(y.spin[c], s, k.spin[c]);
}
inline SpinChargeState axpy_state(const SpinChargeState& y, double h,
                                  const SpinChargeState& k) {
  SpinChargeState out = y;
  accumulate_state(out, h, k);
  out.time = y.time + h;
  return out;
}

}  // namespace smqt
