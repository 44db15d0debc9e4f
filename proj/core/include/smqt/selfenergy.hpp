#pragma once

// Scattering closures.
//
// The collision structure of the transport equations involves a scalar and a
// vector self-energy, each split into retarded real part, broadening, and
// lesser component:
//   scalar: Re Sigma_r, Gamma_bar = -Im Sigma_r, Sigma_less, A_bar
//   vector: Re Xi_r,    gamma_vec = -Im Xi_r,    Xi_less,    A_vec
// plus the spectral functions of the distribution itself (Re/Im S0_r, Re S_r).
// Two closures are provided:
//   - table: all fields are static phase-space tables; collision terms are
//       out: -Gamma_bar * F          (F = s0 and each spin component)
//       in:  +c_a * Sigma_less * A   (A_bar for s0, A_vec for spin)
//   - relaxation_time: BGK-style momentum redistribution for the charge
//     sector and T1/T2 relaxation for the spin sector against the normalized
//     Gaussian momentum weight
//       w(p) = exp(-|p|^2 / 2 sigma_w^2) / Z,  sum_p w dp^d = 1 (discretely),
//     which makes the charge redistribution conserve sum_p s0 dp^d per
//     position node exactly:
//       ds0   = -(s0 - n(q) w(p)) / tau_p
//       dspin = -T/T2 - (L - (m_eq.axis) w(p))/T1 * axis
//     (L, T: longitudinal/transverse parts of spin along relax_axis).
//     With spin_isotropize set, momentum scattering also redistributes each
//     spin component, conserving it per position node:
//       dspin += -(spin - s_loc(q) w(p)) / tau_p
//     This is the mechanism behind the diffusive and motional-narrowing
//     regimes; it is off by default.

#include <array>
#include <memory>
#include <vector>

#include "smqt/phase_field.hpp"
#include "smqt/state.hpp"

namespace smqt {

struct SelfEnergySet {
  PhaseField re_sigma_r, gamma_bar, sigma_less, a_bar;
  VectorField gamma_vec, re_xi_r, xi_less, a_vec;
  // spectral data of the distribution itself, optional (zero when absent)
  PhaseField re_s0_r, im_s0_r;
  VectorField re_s_r;

  static SelfEnergySet zeros(const PhaseSpaceGrid& g);
};

// Gamma = -Im of the retarded component, elementwise (re kept for shape
// symmetry with the (re, im) pair convention).
PhaseField gamma_from_retarded(const PhaseField& re, const PhaseField& im);
VectorField gamma_from_retarded(const VectorField& re, const VectorField& im);

// Spectral function A = -Im of the retarded distribution component.
PhaseField spectral_from_retarded(const PhaseField& im_r);
VectorField spectral_from_retarded(const VectorField& im_r);

// Throws std::invalid_argument on shape mismatch, non-finite entries, or
// negative gamma_bar.
void validate_selfenergy(const SelfEnergySet& set, const PhaseSpaceGrid& grid);

struct RelaxationParams {
  double tau_p = 1.0;
  double t1 = 1.0;
  double t2 = 1.0;
  Vec3 m_eq{0.0, 0.0, 0.0};
  Vec3 relax_axis{0.0, 0.0, 1.0};  // resolved at config time: b_ext dir or z
  double weight_sigma = 1.0;       // thermal width of w(p)
  bool spin_isotropize = false;

  bool operator==(const RelaxationParams&) const = default;
};

struct SelfEnergyClosure {
  enum class Kind { none, relaxation_time, table };
  Kind kind = Kind::none;
  RelaxationParams relax;
  double c_a = 1.0;  // scattering-in coupling constant
  std::shared_ptr<const SelfEnergySet> table;  // set when kind == table
};

// Normalized momentum weight w over the (n_py * n_px) momentum nodes.
std::vector<double> equilibrium_weight(const PhaseSpaceGrid& grid,
                                       double sigma_w);

// Collision contribution to d/dt (s0, spin). The out/in flags mirror the
// scattering_out / scattering_in term toggles; the two parts are computed
// independently so enabling both equals the sum of the parts bitwise.
SpinChargeState collision_terms(const SpinChargeState& state,
                                const SelfEnergyClosure& closure,
                                const PhaseSpaceGrid& grid,
                                bool include_out = true,
                                bool include_in = true);

}  // namespace smqt
