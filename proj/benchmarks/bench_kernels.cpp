#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "smqt/moyal.hpp"
#include "smqt/poisson.hpp"
#include "smqt/runner.hpp"
#include "smqt/transport.hpp"

namespace {

using namespace smqt;

PhaseSpaceGrid channel_grid(int n_q, int n_p, int dims = 1) {
  return make_grid({n_q, n_p, dims, 0.0, static_cast<double>(n_q) * 0.5,
                    -2.0, 2.0, QBoundary::periodic});
}

SpinChargeState packet_state(const PhaseSpaceGrid& g) {
  return init_gaussian(g, 0.25 * g.n_q, {0.5, 0.0}, 0.1 * g.n_q, 0.8,
                       {0.5, 0.0, 0.5}, 1.0);
}

FieldConfig driven_fields() {
  FieldConfig f;
  f.b_ext = {0.0, 0.2, 0.8};
  f.alpha_rashba = 0.3;
  f.beta_dresselhaus = 0.1;
  f.e_ext = 0.15;
  return f;
}

SelfEnergyClosure relax_closure() {
  SelfEnergyClosure c;
  c.kind = SelfEnergyClosure::Kind::relaxation_time;
  c.relax.tau_p = 0.2;
  c.relax.t1 = 2.0;
  c.relax.t2 = 0.5;
  c.relax.spin_isotropize = true;
  return c;
}

SelfEnergyClosure table_closure(const PhaseSpaceGrid& g) {
  auto table = std::make_shared<SelfEnergySet>(SelfEnergySet::zeros(g));
  for (int iq = 0; iq < g.n_q; ++iq)
    for (int ipy = 0; ipy < g.n_py(); ++ipy)
      for (int ipx = 0; ipx < g.n_px(); ++ipx) {
        const double q = g.q_at(iq), p = g.p_at(ipx);
        const std::size_t k = table->gamma_bar.index(iq, ipy, ipx);
        table->gamma_bar.v[k] = 0.3 + 0.1 * std::sin(q);
        table->sigma_less.v[k] = 0.5 * std::exp(-p * p);
        table->a_bar.v[k] = 1.0 + 0.2 * std::cos(q);
        for (int c = 0; c < 3; ++c) {
          table->gamma_vec[c].v[k] = 0.05 * std::sin(q + c);
          table->re_xi_r[c].v[k] = 0.1 * std::cos(q - c) * p;
          table->xi_less[c].v[k] = 0.07 * std::sin(2.0 * q + c);
          table->a_vec[c].v[k] = 0.2 * std::exp(-p * p) * std::cos(q + c);
          table->re_s_r[c].v[k] = 0.03 * std::sin(q) * p;
        }
        table->re_sigma_r.v[k] = 0.2 * std::cos(q) + 0.05 * p * p;
        table->re_s0_r.v[k] = 0.1 * std::sin(q) * p;
        table->im_s0_r.v[k] = -0.08 * std::exp(-p * p);
      }
  SelfEnergyClosure c;
  c.kind = SelfEnergyClosure::Kind::table;
  c.c_a = 0.9;
  c.table = std::move(table);
  return c;
}

void bm_rhs_ballistic(benchmark::State& state) {
  const PhaseSpaceGrid g = channel_grid(static_cast<int>(state.range(0)), 33);
  const SpinChargeState s = packet_state(g);
  const FieldConfig fields = driven_fields();
  for (auto _ : state) {
    benchmark::DoNotOptimize(ballistic_rhs(s, g, fields));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.nodes()));
}
BENCHMARK(bm_rhs_ballistic)->Arg(64)->Arg(256);

void bm_rhs_all_groups(benchmark::State& state) {
  const PhaseSpaceGrid g = channel_grid(static_cast<int>(state.range(0)), 33);
  const SpinChargeState s = packet_state(g);
  const FieldConfig fields = driven_fields();
  const SelfEnergyClosure closure = table_closure(g);
  TermToggles toggles;
  toggles.torque_gamma = true;
  toggles.re_sigma_corrections = true;
  toggles.re_xi_torque = true;
  toggles.charge_coupling = true;
  toggles.scalar_spin_coupling = true;
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_rhs(s, g, fields, closure, toggles, {}));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.nodes()));
}
BENCHMARK(bm_rhs_all_groups)->Arg(64)->Arg(256);

void bm_rhs_2d_momentum(benchmark::State& state) {
  const PhaseSpaceGrid g = channel_grid(static_cast<int>(state.range(0)), 21, 2);
  const SpinChargeState s = packet_state(g);
  const FieldConfig fields = driven_fields();
  const SelfEnergyClosure closure = relax_closure();
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_rhs(s, g, fields, closure, {}, {}));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.nodes()));
}
BENCHMARK(bm_rhs_2d_momentum)->Arg(16)->Arg(64);

void bm_rk4_step(benchmark::State& state) {
  const PhaseSpaceGrid g = channel_grid(static_cast<int>(state.range(0)), 33);
  const SpinChargeState s = packet_state(g);
  const FieldConfig fields = driven_fields();
  const SelfEnergyClosure closure = relax_closure();
  auto rhs = [&](const SpinChargeState& y) {
    return assemble_rhs(y, g, fields, closure, {}, {});
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(rk4_step(s, 0.005, rhs));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.nodes()));
}
BENCHMARK(bm_rk4_step)->Arg(64)->Arg(256);

void bm_collision_relax(benchmark::State& state) {
  const PhaseSpaceGrid g = channel_grid(static_cast<int>(state.range(0)), 33);
  const SpinChargeState s = packet_state(g);
  const SelfEnergyClosure closure = relax_closure();
  for (auto _ : state) {
    benchmark::DoNotOptimize(collision_terms(s, closure, g));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.nodes()));
}
BENCHMARK(bm_collision_relax)->Arg(64)->Arg(256);

void bm_poisson_bracket(benchmark::State& state) {
  const PhaseSpaceGrid g = channel_grid(static_cast<int>(state.range(0)), 33);
  PhaseField a = PhaseField::zeros(g), b = PhaseField::zeros(g);
  for (int iq = 0; iq < g.n_q; ++iq)
    for (int ipx = 0; ipx < g.n_px(); ++ipx) {
      a(iq, 0, ipx) = std::sin(g.q_at(iq)) + 0.2 * g.p_at(ipx);
      b(iq, 0, ipx) = std::cos(g.q_at(iq)) * g.p_at(ipx);
    }
  for (auto _ : state) {
    benchmark::DoNotOptimize(poisson_bracket(a, b, g));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.nodes()));
}
BENCHMARK(bm_poisson_bracket)->Arg(64)->Arg(256);

void bm_moment_density(benchmark::State& state) {
  const PhaseSpaceGrid g = channel_grid(static_cast<int>(state.range(0)), 33);
  const SpinChargeState s = packet_state(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(moment_density(s, g));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.nodes()));
}
BENCHMARK(bm_moment_density)->Arg(64)->Arg(256);

void bm_solve_poisson(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const bool periodic = state.range(1) != 0;
  const double L = 32.0;
  const ChannelGrid g{n, 0.0, L,
                      periodic ? L / n : L / (n - 1),
                      periodic ? QBoundary::periodic
                               : QBoundary::dirichlet_inflow};
  std::vector<double> rho(n);
  for (int i = 0; i < n; ++i)
    rho[i] = std::sin(2.0 * std::numbers::pi * g.q_at(i) / L);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_poisson(rho, {}, g));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(bm_solve_poisson)
    ->Args({128, 0})
    ->Args({128, 1})
    ->Args({1024, 0})
    ->Args({1024, 1});

}  // namespace

BENCHMARK_MAIN();
