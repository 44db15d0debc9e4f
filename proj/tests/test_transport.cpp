#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "smqt/errors.hpp"
#include "smqt/transport.hpp"

using namespace smqt;

namespace {

PhaseSpaceGrid periodic_grid(int n_q = 8) {
  return make_grid({n_q, 5, 1, 0.0, static_cast<double>(n_q), -2.0, 2.0,
                    QBoundary::periodic});
}

SpinChargeState smooth_state(const PhaseSpaceGrid& g) {
  SpinChargeState s = SpinChargeState::zeros(g);
  for (int iq = 0; iq < g.n_q; ++iq)
    for (int ipx = 0; ipx < g.n_px(); ++ipx) {
      const double q = g.q_at(iq), p = g.p_at(ipx);
      const double s0 = 2.0 + std::sin(2.0 * std::numbers::pi * q / g.n_q) +
                        0.5 * std::exp(-p * p);
      s.s0(iq, 0, ipx) = s0;
      s.spin[0](iq, 0, ipx) = 0.4 * s0;
      s.spin[1](iq, 0, ipx) = 0.2 * s0 * std::cos(p);
      s.spin[2](iq, 0, ipx) = -0.3 * s0;
    }
  return s;
}

TermToggles only(bool TermToggles::* member) {
  TermToggles t = TermToggles::none();
  t.*member = true;
  return t;
}

}  // namespace

TEST_CASE("drift matches the upwind stencil applied by hand") {
  const PhaseSpaceGrid g = periodic_grid();
  const SpinChargeState s = smooth_state(g);
  const FieldConfig fields;
  const SelfEnergyClosure closure;
  const SpinChargeState d = assemble_rhs(s, g, fields, closure,
                                         only(&TermToggles::drift), {});
  for (int iq = 0; iq < g.n_q; ++iq)
    for (int ipx = 0; ipx < g.n_px(); ++ipx) {
      const double u = g.p_at(ipx);
      double want = 0.0;
      if (u > 0.0) {
        const double fm = s.s0(iq > 0 ? iq - 1 : g.n_q - 1, 0, ipx);
        want = -u * ((s.s0(iq, 0, ipx) - fm) / g.dq);
      } else if (u < 0.0) {
        const double fp = s.s0(iq < g.n_q - 1 ? iq + 1 : 0, 0, ipx);
        want = -u * ((fp - s.s0(iq, 0, ipx)) / g.dq);
      }
      CHECK(d.s0(iq, 0, ipx) == want);
    }
  // the same stencil acts on each spin component
  for (int iq = 0; iq < g.n_q; ++iq) {
    const double u = g.p_at(4);
    const double fm = s.spin[2](iq > 0 ? iq - 1 : g.n_q - 1, 0, 4);
    CHECK(d.spin[2](iq, 0, 4) ==
          -u * ((s.spin[2](iq, 0, 4) - fm) / g.dq));
  }
}

TEST_CASE("open channel drift sees zero inflow ghosts") {
  const PhaseSpaceGrid g = make_grid({9, 5, 1, 0.0, 8.0, -2.0, 2.0,
                                      QBoundary::dirichlet_inflow});
  SpinChargeState s = SpinChargeState::zeros(g);
  s.s0.fill(1.0);
  const SpinChargeState d = assemble_rhs(s, g, {}, {},
                                         only(&TermToggles::drift), {});
  // right-movers at the left edge advect the zero ghost in: -u (1 - 0) / dq
  CHECK(d.s0(0, 0, 3) == -1.0);   // p = +1
  CHECK(d.s0(0, 0, 4) == -2.0);   // p = +2
  // left-movers at the right edge likewise
  CHECK(d.s0(8, 0, 1) == -1.0);   // p = -1
  CHECK(d.s0(8, 0, 0) == -2.0);   // p = -2
  // constant data is stationary away from the open ends
  CHECK(d.s0(4, 0, 3) == 0.0);
  CHECK(d.s0(0, 0, 1) == 0.0);    // left-movers at the left edge flow out
}

TEST_CASE("precession torque is the pointwise field cross product") {
  const PhaseSpaceGrid g = periodic_grid();
  SpinChargeState s = SpinChargeState::zeros(g);
  for (int iq = 0; iq < g.n_q; ++iq)
    for (int ipx = 0; ipx < g.n_px(); ++ipx) {
      s.s0(iq, 0, ipx) = 1.0 + 0.1 * iq;
      s.spin[0](iq, 0, ipx) = s.s0(iq, 0, ipx);  // fully x-polarized
    }
  FieldConfig fields;
  fields.b_ext = {0.0, 0.0, 2.0};
  const SpinChargeState d = assemble_rhs(s, g, fields, {},
                                         only(&TermToggles::precession), {});
  for (int iq = 0; iq < g.n_q; ++iq)
    for (int ipx = 0; ipx < g.n_px(); ++ipx) {
      // B x M rotates x-polarization toward +y at rate |B|
      CHECK(d.spin[1](iq, 0, ipx) == 2.0 * s.spin[0](iq, 0, ipx));
      CHECK(d.spin[0](iq, 0, ipx) == 0.0);
      CHECK(d.spin[2](iq, 0, ipx) == 0.0);
      CHECK(d.s0(iq, 0, ipx) == 0.0);
    }
}

TEST_CASE("disabling every term group leaves a unit-rate zero derivative") {
  const PhaseSpaceGrid g = periodic_grid();
  const SpinChargeState s = smooth_state(g);
  const SpinChargeState d = assemble_rhs(s, g, {}, {}, TermToggles::none(), {});
  CHECK(d.time == 1.0);
  for (double v : d.s0.v) CHECK(v == 0.0);
  for (int c = 0; c < 3; ++c)
    for (double v : d.spin[c].v) CHECK(v == 0.0);
}

TEST_CASE("a zero-length step reproduces the state exactly") {
  const PhaseSpaceGrid g = periodic_grid();
  const SpinChargeState s = smooth_state(g);
  FieldConfig fields;
  fields.b_ext = {0.1, 0.0, 0.5};
  auto rhs = [&](const SpinChargeState& y) {
    return ballistic_rhs(y, g, fields);
  };
  const SpinChargeState out = rk4_step(s, 0.0, rhs);
  CHECK(out.time == s.time);
  for (std::size_t k = 0; k < s.s0.v.size(); ++k)
    CHECK(out.s0.v[k] == s.s0.v[k]);
  for (int c = 0; c < 3; ++c)
    for (std::size_t k = 0; k < s.spin[c].v.size(); ++k)
      CHECK(out.spin[c].v[k] == s.spin[c].v[k]);
}

TEST_CASE("one integrator step matches the fifth-order decay error budget") {
  // pure T2 decay: ds/dt = -s / t2 node by node, lambda dt = 0.2
  const PhaseSpaceGrid g = periodic_grid();
  SpinChargeState s = SpinChargeState::zeros(g);
  s.s0.fill(1.0);
  for (double& v : s.spin[0].v) v = 0.8;
  SelfEnergyClosure c;
  c.kind = SelfEnergyClosure::Kind::relaxation_time;
  c.relax.t2 = 0.5;
  TermToggles t = TermToggles::none();
  t.scattering_out = true;
  t.scattering_in = true;
  auto rhs = [&](const SpinChargeState& y) {
    return assemble_rhs(y, g, {}, c, t, {});
  };
  const double dt = 0.1;
  const SpinChargeState out = rk4_step(s, dt, rhs);
  const double z = dt / 0.5;
  const double exact = 0.8 * std::exp(-z);
  const double rel = std::abs(out.spin[0].v[0] - exact) / exact;
  CHECK(rel <= std::pow(z, 5) / 100.0);  // leading truncation ~ z^5 / 120
  CHECK(rel >= std::pow(z, 5) / 200.0);  // and it is genuinely there
}

TEST_CASE("a full precession period conserves the node norms tightly") {
  const PhaseSpaceGrid g = periodic_grid();
  SpinChargeState s = SpinChargeState::zeros(g);
  s.s0.fill(1.0);
  for (double& v : s.spin[0].v) v = 1.0;
  FieldConfig fields;
  fields.b_ext = {0.0, 0.0, 1.0};
  auto rhs = [&](const SpinChargeState& y) {
    return assemble_rhs(y, g, fields, {}, only(&TermToggles::precession), {});
  };
  SpinChargeState y = s;
  const double dt = 0.01;
  for (int step = 0; step < 628; ++step) y = rk4_step(y, dt, rhs);
  // RK4 on a rotation shrinks norms by (theta^6 / 72) per step; 628 steps
  // at theta = 0.01 budget to ~9e-12
  for (std::size_t k = 0; k < y.s0.v.size(); ++k) {
    const double norm = std::hypot(y.spin[0].v[k], y.spin[1].v[k]);
    CHECK(std::abs(norm - 1.0) < 2e-11);
  }
  // and the phase advanced by ~2 pi back toward +x
  CHECK(y.spin[0].v[0] == doctest::Approx(std::cos(6.28 - 2.0 * std::numbers::pi))
                              .epsilon(1e-6));
}

TEST_CASE("term toggles contribute independently and additively") {
  const PhaseSpaceGrid g = periodic_grid();
  const SpinChargeState s = smooth_state(g);
  FieldConfig fields;
  fields.b_ext = {0.3, -0.2, 0.5};
  fields.alpha_rashba = 0.4;
  fields.beta_dresselhaus = 0.1;
  fields.e_ext = 0.2;
  SelfEnergyClosure c;
  c.kind = SelfEnergyClosure::Kind::relaxation_time;
  c.relax.tau_p = 0.3;
  c.relax.t1 = 2.0;
  c.relax.t2 = 0.8;
  c.relax.m_eq = {0.0, 0.1, 0.2};
  c.relax.spin_isotropize = true;
  std::vector<double> phi(g.n_q);
  for (int i = 0; i < g.n_q; ++i)
    phi[i] = 0.3 * std::sin(2.0 * std::numbers::pi * g.q_at(i) / g.n_q);

  TermToggles all;
  all.torque_gamma = true;
  all.re_sigma_corrections = true;
  all.re_xi_torque = true;
  all.charge_coupling = true;
  all.scalar_spin_coupling = true;
  const SpinChargeState full = assemble_rhs(s, g, fields, c, all, phi);

  bool TermToggles::* members[10] = {
      &TermToggles::drift,          &TermToggles::lorentz,
      &TermToggles::precession,     &TermToggles::scattering_out,
      &TermToggles::scattering_in,  &TermToggles::torque_gamma,
      &TermToggles::re_sigma_corrections, &TermToggles::re_xi_torque,
      &TermToggles::charge_coupling, &TermToggles::scalar_spin_coupling};
  SpinChargeState sum = SpinChargeState::zeros(g);
  for (auto m : members) {
    const SpinChargeState part = assemble_rhs(s, g, fields, c, only(m), phi);
    add_scaled(sum.s0, 1.0, part.s0);
    for (int comp = 0; comp < 3; ++comp)
      add_scaled(sum.spin[comp], 1.0, part.spin[comp]);
  }
  for (std::size_t k = 0; k < full.s0.v.size(); ++k)
    CHECK(full.s0.v[k] == sum.s0.v[k]);
  for (int comp = 0; comp < 3; ++comp)
    for (std::size_t k = 0; k < full.spin[comp].v.size(); ++k)
      CHECK(full.spin[comp].v[k] == sum.spin[comp].v[k]);
}

TEST_CASE("periodic drift conserves total charge over many steps") {
  const PhaseSpaceGrid g = periodic_grid();
  SpinChargeState y = smooth_state(g);
  auto rhs = [&](const SpinChargeState& s) {
    return assemble_rhs(s, g, {}, {}, only(&TermToggles::drift), {});
  };
  const double q0 = total_charge(y, g);
  for (int step = 0; step < 100; ++step) y = rk4_step(y, 0.1, rhs);
  CHECK(std::abs(total_charge(y, g) - q0) / q0 < 1e-13);
}

TEST_CASE("stability bound tracks the fastest enabled advection") {
  const PhaseSpaceGrid g = periodic_grid();  // dq = 1, dp = 1, |p| <= 2
  FieldConfig fields;
  CHECK(cfl_limit(g, fields, only(&TermToggles::drift), {}) == 0.25);

  fields.e_ext = 4.0;
  TermToggles both = TermToggles::none();
  both.drift = true;
  both.lorentz = true;
  CHECK(cfl_limit(g, fields, both, {}) == 0.125);  // 0.5 * dp / |E|

  CHECK(cfl_limit(g, fields, only(&TermToggles::precession), {}) ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("non-finite contributions name the offending term group") {
  const PhaseSpaceGrid g = periodic_grid();
  SpinChargeState s = smooth_state(g);
  s.s0(2, 0, 0) = std::numeric_limits<double>::quiet_NaN();
  try {
    assemble_rhs(s, g, {}, {}, only(&TermToggles::drift), {});
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("drift") != std::string::npos);
  }
}
