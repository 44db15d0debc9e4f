#include "smqt/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "smqt/errors.hpp"
#include "smqt/moyal.hpp"

namespace smqt {

namespace {

// first-order upwind d/dq with velocity u at a node; periodic wrap or zero
// inflow ghosts on open channels
inline double upwind_dq(const PhaseField& f, const PhaseSpaceGrid& g, int iq,
                        int ipy, int ipx, double u) {
  if (u == 0.0) return 0.0;
  const int n = g.n_q;
  const bool periodic = g.q_boundary == QBoundary::periodic;
  if (u > 0.0) {
    const double fm =
        iq > 0 ? f(iq - 1, ipy, ipx) : (periodic ? f(n - 1, ipy, ipx) : 0.0);
    return (f(iq, ipy, ipx) - fm) / g.dq;
  }
  const double fp =
      iq < n - 1 ? f(iq + 1, ipy, ipx) : (periodic ? f(0, ipy, ipx) : 0.0);
  return (fp - f(iq, ipy, ipx)) / g.dq;
}

// first-order upwind along a momentum axis; the distribution is zero beyond
// the cutoff
inline double upwind_dp(const PhaseField& f, const PhaseSpaceGrid& g, int iq,
                        int ipy, int ipx, int axis, double u) {
  if (u == 0.0) return 0.0;
  if (axis == 0) {
    const int n = g.n_px();
    if (u > 0.0) {
      const double fm = ipx > 0 ? f(iq, ipy, ipx - 1) : 0.0;
      return (f(iq, ipy, ipx) - fm) / g.dp;
    }
    const double fp = ipx < n - 1 ? f(iq, ipy, ipx + 1) : 0.0;
    return (fp - f(iq, ipy, ipx)) / g.dp;
  }
  const int n = g.n_py();
  if (u > 0.0) {
    const double fm = ipy > 0 ? f(iq, ipy - 1, ipx) : 0.0;
    return (f(iq, ipy, ipx) - fm) / g.dp;
  }
  const double fp = ipy < n - 1 ? f(iq, ipy + 1, ipx) : 0.0;
  return (fp - f(iq, ipy, ipx)) / g.dp;
}

struct LorentzForce {
  double upx;  // E + lf (v x B)_x
  double upy;  // lf (v x B)_y
};

inline LorentzForce lorentz_force(const PhaseSpaceGrid& g,
                                  const FieldConfig& fields, double e_at_q,
                                  double q, double px, double py,
                                  double lorentz_factor) {
  const Vec3 a = vector_potential(fields.b_ext, q);
  // the channel has no z momentum axis; v_z is pure gauge
  const Vec3 v{px + a.x, py + a.y, a.z};
  const Vec3 vxb = cross(v, fields.b_ext);
  return {e_at_q + lorentz_factor * vxb.x, lorentz_factor * vxb.y};
}

void check_group_finite(const SpinChargeState& contrib, const char* group) {
  for (double x : contrib.s0.v)
    if (!std::isfinite(x))
      throw NumericalError(std::string("assemble_rhs: non-finite contribution "
                                       "from term group '") + group + "'");
  for (int c = 0; c < 3; ++c)
    for (double x : contrib.spin[c].v)
      if (!std::isfinite(x))
        throw NumericalError(std::string("assemble_rhs: non-finite contribution "
                                         "from term group '") + group + "'");
}

void zero_state(SpinChargeState& s) {
  s.s0.fill(0.0);
  for (auto& c : s.spin) c.fill(0.0);
}

void accumulate_group(SpinChargeState& acc, SpinChargeState& scratch,
                      bool check, const char* group) {
  if (check) check_group_finite(scratch, group);
  add_scaled(acc.s0, 1.0, scratch.s0);
  for (int c = 0; c < 3; ++c) add_scaled(acc.spin[c], 1.0, scratch.spin[c]);
}

}  // namespace

SpinChargeState assemble_rhs(const SpinChargeState& state,
                             const PhaseSpaceGrid& grid,
                             const FieldConfig& fields,
                             const SelfEnergyClosure& closure,
                             const TermToggles& toggles,
                             const std::vector<double>& phi_total,
                             const TransportOptions& opt) {
  if (!state.s0.conforms(grid))
    throw std::invalid_argument("assemble_rhs: state does not match grid");
  if (!phi_total.empty() && static_cast<int>(phi_total.size()) != grid.n_q)
    throw std::invalid_argument("assemble_rhs: phi size != n_q");

  const ChannelGrid channel = grid.channel();
  const std::vector<double> efield =
      electric_field(phi_total, fields.e_ext, channel);
  const double lf = opt.lorentz_half_factor ? 0.5 : 1.0;
  const bool table = closure.kind == SelfEnergyClosure::Kind::table &&
                     closure.table != nullptr;

  SpinChargeState acc = SpinChargeState::zeros(grid);
  acc.time = 1.0;  // unit rate; integrators scale by dt
  SpinChargeState scratch = SpinChargeState::zeros(grid);

  const PhaseField* all_fields[4] = {&state.s0, &state.spin[0], &state.spin[1],
                                     &state.spin[2]};
  PhaseField* scratch_fields[4] = {&scratch.s0, &scratch.spin[0],
                                   &scratch.spin[1], &scratch.spin[2]};

  // 1. drift: -U_q dF/dq, U_q = p_x (A_x = 0 in this gauge)
  if (toggles.drift) {
    zero_state(scratch);
    for (int fi = 0; fi < 4; ++fi) {
      const PhaseField& f = *all_fields[fi];
      PhaseField& out = *scratch_fields[fi];
      for (int iq = 0; iq < grid.n_q; ++iq)
        for (int ipy = 0; ipy < grid.n_py(); ++ipy)
          for (int ipx = 0; ipx < grid.n_px(); ++ipx) {
            const double u = grid.p_at(ipx);
            out(iq, ipy, ipx) = -u * upwind_dq(f, grid, iq, ipy, ipx, u);
          }
    }
    accumulate_group(acc, scratch, opt.check_finite, "drift");
  }

  // 2. lorentz: -(E + lf v x B) . grad_p F
  if (toggles.lorentz) {
    zero_state(scratch);
    for (int fi = 0; fi < 4; ++fi) {
      const PhaseField& f = *all_fields[fi];
      PhaseField& out = *scratch_fields[fi];
      for (int iq = 0; iq < grid.n_q; ++iq) {
        const double q = grid.q_at(iq);
        const double e = efield[iq];
        for (int ipy = 0; ipy < grid.n_py(); ++ipy) {
          const double py = grid.py_at(ipy);
          for (int ipx = 0; ipx < grid.n_px(); ++ipx) {
            const LorentzForce F = lorentz_force(grid, fields, e, q,
                                                 grid.p_at(ipx), py, lf);
            double r = -F.upx * upwind_dp(f, grid, iq, ipy, ipx, 0, F.upx);
            if (grid.momentum_dims == 2)
              r -= F.upy * upwind_dp(f, grid, iq, ipy, ipx, 1, F.upy);
            out(iq, ipy, ipx) = r;
          }
        }
      }
    }
    accumulate_group(acc, scratch, opt.check_finite, "lorentz");
  }

  // 3. precession: +B_eff x spin
  if (toggles.precession) {
    zero_state(scratch);
    for (int iq = 0; iq < grid.n_q; ++iq) {
      const double q = grid.q_at(iq);
      const double e = efield[iq];
      for (int ipy = 0; ipy < grid.n_py(); ++ipy) {
        const double py = grid.py_at(ipy);
        for (int ipx = 0; ipx < grid.n_px(); ++ipx) {
          const Vec3 beff =
              effective_field({grid.p_at(ipx), py}, q, e, fields);
          const std::size_t k = state.s0.index(iq, ipy, ipx);
          const Vec3 s{state.spin[0].v[k], state.spin[1].v[k],
                       state.spin[2].v[k]};
          const Vec3 t = cross(beff, s);
          scratch.spin[0].v[k] = t.x;
          scratch.spin[1].v[k] = t.y;
          scratch.spin[2].v[k] = t.z;
        }
      }
    }
    accumulate_group(acc, scratch, opt.check_finite, "precession");
  }

  // 4a/4b. scattering: closure out- and in-parts as independent groups
  if (toggles.scattering_out) {
    SpinChargeState coll = collision_terms(state, closure, grid, true, false);
    accumulate_group(acc, coll, opt.check_finite, "scattering_out");
  }
  if (toggles.scattering_in) {
    SpinChargeState coll = collision_terms(state, closure, grid, false, true);
    accumulate_group(acc, coll, opt.check_finite, "scattering_in");
  }

  // 5. gamma torque lines: -1/2 (gamma x_PB spin) + 1/4 (xi_less x_PB a_vec)
  //    - gamma_vec s0
  if (toggles.torque_gamma && table) {
    zero_state(scratch);
    const SelfEnergySet& t = *closure.table;
    const VectorField bc1 = bracket_cross(t.gamma_vec, state.spin, grid);
    const VectorField bc2 = bracket_cross(t.xi_less, t.a_vec, grid);
    for (int c = 0; c < 3; ++c)
      for (std::size_t k = 0; k < scratch.spin[c].v.size(); ++k)
        scratch.spin[c].v[k] = -0.5 * bc1[c].v[k] + 0.25 * bc2[c].v[k] -
                               t.gamma_vec[c].v[k] * state.s0.v[k];
    accumulate_group(acc, scratch, opt.check_finite, "torque_gamma");
  }

  // 6. retarded real-part corrections: -1/2 PB(Re Sigma_r, F)
  //    - 1/2 PB(Sigma_less, Re F_r), both sectors
  if (toggles.re_sigma_corrections && table) {
    zero_state(scratch);
    const SelfEnergySet& t = *closure.table;
    for (int c = 0; c < 3; ++c) {
      const PhaseField b1 = poisson_bracket(t.re_sigma_r, state.spin[c], grid);
      const PhaseField b2 = poisson_bracket(t.sigma_less, t.re_s_r[c], grid);
      for (std::size_t k = 0; k < scratch.spin[c].v.size(); ++k)
        scratch.spin[c].v[k] = -0.5 * b1.v[k] - 0.5 * b2.v[k];
    }
    {
      const PhaseField b1 = poisson_bracket(t.re_sigma_r, state.s0, grid);
      const PhaseField b2 = poisson_bracket(t.sigma_less, t.re_s0_r, grid);
      for (std::size_t k = 0; k < scratch.s0.v.size(); ++k)
        scratch.s0.v[k] = -0.5 * b1.v[k] - 0.5 * b2.v[k];
    }
    accumulate_group(acc, scratch, opt.check_finite, "re_sigma_corrections");
  }

  // 7. +Re Xi_r x spin + Xi_less x Re S_r (pointwise torques)
  if (toggles.re_xi_torque && table) {
    zero_state(scratch);
    const SelfEnergySet& t = *closure.table;
    for (std::size_t k = 0; k < scratch.s0.v.size(); ++k) {
      const Vec3 rexi{t.re_xi_r[0].v[k], t.re_xi_r[1].v[k], t.re_xi_r[2].v[k]};
      const Vec3 xil{t.xi_less[0].v[k], t.xi_less[1].v[k], t.xi_less[2].v[k]};
      const Vec3 s{state.spin[0].v[k], state.spin[1].v[k], state.spin[2].v[k]};
      const Vec3 resr{t.re_s_r[0].v[k], t.re_s_r[1].v[k], t.re_s_r[2].v[k]};
      const Vec3 tq = cross(rexi, s) + cross(xil, resr);
      scratch.spin[0].v[k] = tq.x;
      scratch.spin[1].v[k] = tq.y;
      scratch.spin[2].v[k] = tq.z;
    }
    accumulate_group(acc, scratch, opt.check_finite, "re_xi_torque");
  }

  // groups 8 and 9 need the effective field sampled as grid fields
  VectorField beff_field;
  const bool need_beff =
      toggles.charge_coupling || toggles.scalar_spin_coupling;
  if (need_beff) {
    beff_field = vector_zeros(grid);
    for (int iq = 0; iq < grid.n_q; ++iq) {
      const double q = grid.q_at(iq);
      const double e = efield[iq];
      for (int ipy = 0; ipy < grid.n_py(); ++ipy) {
        const double py = grid.py_at(ipy);
        for (int ipx = 0; ipx < grid.n_px(); ++ipx) {
          const Vec3 b = effective_field({grid.p_at(ipx), py}, q, e, fields);
          const std::size_t k = beff_field[0].index(iq, ipy, ipx);
          beff_field[0].v[k] = b.x;
          beff_field[1].v[k] = b.y;
          beff_field[2].v[k] = b.z;
        }
      }
    }
  }

  // 8. charge sources in the spin equation
  if (toggles.charge_coupling) {
    zero_state(scratch);
    for (int c = 0; c < 3; ++c) {
      const PhaseField b1 = poisson_bracket(beff_field[c], state.s0, grid);
      for (std::size_t k = 0; k < scratch.spin[c].v.size(); ++k)
        scratch.spin[c].v[k] = -0.5 * b1.v[k];
      if (table) {
        const SelfEnergySet& t = *closure.table;
        const PhaseField b2 = poisson_bracket(t.re_xi_r[c], state.s0, grid);
        const PhaseField b3 = poisson_bracket(t.xi_less[c], t.re_s0_r, grid);
        for (std::size_t k = 0; k < scratch.spin[c].v.size(); ++k)
          scratch.spin[c].v[k] -= 0.5 * b2.v[k] + 0.5 * b3.v[k] +
                                  t.xi_less[c].v[k] * t.im_s0_r.v[k];
      }
    }
    accumulate_group(acc, scratch, opt.check_finite, "charge_coupling");
  }

  // 9. spin sources in the charge equation
  if (toggles.scalar_spin_coupling) {
    zero_state(scratch);
    for (int c = 0; c < 3; ++c) {
      const PhaseField b1 = poisson_bracket(beff_field[c], state.spin[c], grid);
      for (std::size_t k = 0; k < scratch.s0.v.size(); ++k)
        scratch.s0.v[k] -= 0.5 * b1.v[k];
    }
    if (table) {
      const SelfEnergySet& t = *closure.table;
      for (int c = 0; c < 3; ++c) {
        const PhaseField b2 = poisson_bracket(t.re_xi_r[c], state.spin[c], grid);
        const PhaseField b3 = poisson_bracket(t.xi_less[c], t.re_s_r[c], grid);
        for (std::size_t k = 0; k < scratch.s0.v.size(); ++k)
          scratch.s0.v[k] -= 0.5 * b2.v[k] + 0.5 * b3.v[k] +
                             t.gamma_vec[c].v[k] * state.spin[c].v[k] -
                             closure.c_a * t.xi_less[c].v[k] * t.a_vec[c].v[k];
      }
    }
    accumulate_group(acc, scratch, opt.check_finite, "scalar_spin_coupling");
  }

  return acc;
}

SpinChargeState ballistic_rhs(const SpinChargeState& state,
                              const PhaseSpaceGrid& grid,
                              const FieldConfig& fields,
                              const std::vector<double>& phi_total,
                              const TransportOptions& opt) {
  TermToggles t = TermToggles::none();
  t.drift = t.lorentz = t.precession = true;
  return assemble_rhs(state, grid, fields, SelfEnergyClosure{}, t, phi_total,
                      opt);
}

double cfl_limit(const PhaseSpaceGrid& grid, const FieldConfig& fields,
                 const TermToggles& toggles,
                 const std::vector<double>& phi_total,
                 const TransportOptions& opt) {
  const double inf = std::numeric_limits<double>::infinity();
  double bound = inf;
  if (toggles.drift) {
    const double v_max = std::max(std::abs(grid.p_min), std::abs(grid.p_max));
    if (v_max > 0.0) bound = std::min(bound, 0.5 * grid.dq / v_max);
  }
  if (toggles.lorentz) {
    const ChannelGrid channel = grid.channel();
    const std::vector<double> efield =
        electric_field(phi_total, fields.e_ext, channel);
    const double lf = opt.lorentz_half_factor ? 0.5 : 1.0;
    double f_max = 0.0;
    for (int iq = 0; iq < grid.n_q; ++iq) {
      const double q = grid.q_at(iq);
      for (int ipy = 0; ipy < grid.n_py(); ++ipy) {
        const double py = grid.py_at(ipy);
        for (int ipx = 0; ipx < grid.n_px(); ++ipx) {
          const LorentzForce F = lorentz_force(grid, fields, efield[iq], q,
                                               grid.p_at(ipx), py, lf);
          f_max = std::max(f_max, std::abs(F.upx));
          if (grid.momentum_dims == 2) f_max = std::max(f_max, std::abs(F.upy));
        }
      }
    }
    if (f_max > 0.0) bound = std::min(bound, 0.5 * grid.dp / f_max);
  }
  return bound;
}

}  // namespace smqt
