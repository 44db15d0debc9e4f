#include "smqt/selfenergy.hpp"

#include <cmath>
#include <stdexcept>

namespace smqt {

SelfEnergySet SelfEnergySet::zeros(const PhaseSpaceGrid& g) {
  SelfEnergySet s;
  s.re_sigma_r = PhaseField::zeros(g);
  s.gamma_bar = PhaseField::zeros(g);
  s.sigma_less = PhaseField::zeros(g);
  s.a_bar = PhaseField::zeros(g);
  s.gamma_vec = vector_zeros(g);
  s.re_xi_r = vector_zeros(g);
  s.xi_less = vector_zeros(g);
  s.a_vec = vector_zeros(g);
  s.re_s0_r = PhaseField::zeros(g);
  s.im_s0_r = PhaseField::zeros(g);
  s.re_s_r = vector_zeros(g);
  return s;
}

PhaseField gamma_from_retarded(const PhaseField& re, const PhaseField& im) {
  require_same_shape(re, im, "gamma_from_retarded");
  PhaseField out = im;
  for (double& x : out.v) x = -x;
  return out;
}

VectorField gamma_from_retarded(const VectorField& re, const VectorField& im) {
  VectorField out;
  for (int c = 0; c < 3; ++c) out[c] = gamma_from_retarded(re[c], im[c]);
  return out;
}

PhaseField spectral_from_retarded(const PhaseField& im_r) {
  PhaseField out = im_r;
  for (double& x : out.v) x = -x;
  return out;
}

VectorField spectral_from_retarded(const VectorField& im_r) {
  VectorField out;
  for (int c = 0; c < 3; ++c) out[c] = spectral_from_retarded(im_r[c]);
  return out;
}

namespace {

void check_field(const PhaseField& f, const PhaseSpaceGrid& grid,
                 const char* name, bool nonnegative = false) {
  if (!f.conforms(grid))
    throw std::invalid_argument(std::string("validate_selfenergy: ") + name +
                                " does not match grid");
  for (double x : f.v) {
    if (!std::isfinite(x))
      throw std::invalid_argument(std::string("validate_selfenergy: ") + name +
                                  " has non-finite entries");
    if (nonnegative && x < 0.0)
      throw std::invalid_argument(std::string("validate_selfenergy: ") + name +
                                  " must be nonnegative (broadening)");
  }
}

}  // namespace

void validate_selfenergy(const SelfEnergySet& set, const PhaseSpaceGrid& grid) {
  check_field(set.re_sigma_r, grid, "re_sigma_r");
  check_field(set.gamma_bar, grid, "gamma_bar", /*nonnegative=*/true);
  check_field(set.sigma_less, grid, "sigma_less");
  check_field(set.a_bar, grid, "a_bar");
  check_field(set.re_s0_r, grid, "re_s0_r");
  check_field(set.im_s0_r, grid, "im_s0_r");
  static const char* vec_names[4] = {"gamma_vec", "re_xi_r", "xi_less", "a_vec"};
  const VectorField* vecs[4] = {&set.gamma_vec, &set.re_xi_r, &set.xi_less,
                                &set.a_vec};
  for (int v = 0; v < 4; ++v)
    for (int c = 0; c < 3; ++c) check_field((*vecs[v])[c], grid, vec_names[v]);
  for (int c = 0; c < 3; ++c) check_field(set.re_s_r[c], grid, "re_s_r");
}

std::vector<double> equilibrium_weight(const PhaseSpaceGrid& grid,
                                       double sigma_w) {
  if (!(sigma_w > 0.0))
    throw std::invalid_argument("equilibrium_weight: sigma must be > 0");
  const int npy = grid.n_py(), npx = grid.n_px();
  std::vector<double> w(static_cast<std::size_t>(npy) * npx);
  double z = 0.0;
  for (int ipy = 0; ipy < npy; ++ipy)
    for (int ipx = 0; ipx < npx; ++ipx) {
      const double px = grid.p_at(ipx);
      const double py = grid.py_at(ipy);
      const double g = std::exp(-(px * px + py * py) / (2.0 * sigma_w * sigma_w));
      w[ipy * npx + ipx] = g;
      z += g;
    }
  // discrete normalization: sum_p w dp^d = 1, so BGK redistribution conserves
  // the per-node charge exactly up to rounding
  const double scale = 1.0 / (z * grid.dp_volume());
  for (double& x : w) x *= scale;
  return w;
}

namespace {

SpinChargeState collision_table(const SpinChargeState& state,
                                const SelfEnergyClosure& closure,
                                const PhaseSpaceGrid& grid, bool out_part,
                                bool in_part) {
  const SelfEnergySet& t = *closure.table;
  SpinChargeState d = SpinChargeState::zeros(grid);
  const std::size_t n = d.s0.v.size();
  if (out_part) {
    for (std::size_t i = 0; i < n; ++i)
      d.s0.v[i] -= t.gamma_bar.v[i] * state.s0.v[i];
    for (int c = 0; c < 3; ++c)
      for (std::size_t i = 0; i < n; ++i)
        d.spin[c].v[i] -= t.gamma_bar.v[i] * state.spin[c].v[i];
  }
  if (in_part) {
    for (std::size_t i = 0; i < n; ++i)
      d.s0.v[i] += closure.c_a * t.sigma_less.v[i] * t.a_bar.v[i];
    for (int c = 0; c < 3; ++c)
      for (std::size_t i = 0; i < n; ++i)
        d.spin[c].v[i] += closure.c_a * t.sigma_less.v[i] * t.a_vec[c].v[i];
  }
  return d;
}

SpinChargeState collision_relax(const SpinChargeState& state,
                                const SelfEnergyClosure& closure,
                                const PhaseSpaceGrid& grid, bool out_part,
                                bool in_part) {
  const RelaxationParams& r = closure.relax;
  const std::vector<double> w = equilibrium_weight(grid, r.weight_sigma);
  const double dpv = grid.dp_volume();
  const double axn = norm(r.relax_axis);
  const Vec3 axis = axn > 0.0 ? (1.0 / axn) * r.relax_axis : Vec3{0.0, 0.0, 1.0};
  const double m_eq_l = dot(r.m_eq, axis);
  const std::size_t pn = w.size();

  SpinChargeState d = SpinChargeState::zeros(grid);
  for (int iq = 0; iq < grid.n_q; ++iq) {
    const std::size_t base = state.s0.index(iq, 0, 0);
    // local charge (and, when isotropizing, spin) per position node
    double n_loc = 0.0;
    Vec3 s_loc{};
    for (std::size_t j = 0; j < pn; ++j) n_loc += state.s0.v[base + j];
    n_loc *= dpv;
    if (r.spin_isotropize) {
      for (std::size_t j = 0; j < pn; ++j) {
        s_loc.x += state.spin[0].v[base + j];
        s_loc.y += state.spin[1].v[base + j];
        s_loc.z += state.spin[2].v[base + j];
      }
      s_loc = dpv * s_loc;
    }
    for (std::size_t j = 0; j < pn; ++j) {
      const std::size_t k = base + j;
      const Vec3 s{state.spin[0].v[k], state.spin[1].v[k], state.spin[2].v[k]};
      const double l = dot(s, axis);
      if (out_part) {
        d.s0.v[k] -= state.s0.v[k] / r.tau_p;
        // transverse at 1/T2, longitudinal at 1/T1
        const Vec3 t = s - l * axis;
        d.spin[0].v[k] -= t.x / r.t2 + l * axis.x / r.t1;
        d.spin[1].v[k] -= t.y / r.t2 + l * axis.y / r.t1;
        d.spin[2].v[k] -= t.z / r.t2 + l * axis.z / r.t1;
        if (r.spin_isotropize) {
          d.spin[0].v[k] -= s.x / r.tau_p;
          d.spin[1].v[k] -= s.y / r.tau_p;
          d.spin[2].v[k] -= s.z / r.tau_p;
        }
      }
      if (in_part) {
        d.s0.v[k] += n_loc * w[j] / r.tau_p;
        d.spin[0].v[k] += m_eq_l * w[j] * axis.x / r.t1;
        d.spin[1].v[k] += m_eq_l * w[j] * axis.y / r.t1;
        d.spin[2].v[k] += m_eq_l * w[j] * axis.z / r.t1;
        if (r.spin_isotropize) {
          d.spin[0].v[k] += s_loc.x * w[j] / r.tau_p;
          d.spin[1].v[k] += s_loc.y * w[j] / r.tau_p;
          d.spin[2].v[k] += s_loc.z * w[j] / r.tau_p;
        }
      }
    }
  }
  return d;
}

}  // namespace

SpinChargeState collision_terms(const SpinChargeState& state,
                                const SelfEnergyClosure& closure,
                                const PhaseSpaceGrid& grid, bool include_out,
                                bool include_in) {
  if (!state.s0.conforms(grid))
    throw std::invalid_argument("collision_terms: state does not match grid");
  switch (closure.kind) {
    case SelfEnergyClosure::Kind::none:
      return SpinChargeState::zeros(grid);
    case SelfEnergyClosure::Kind::table:
      if (!closure.table)
        throw std::invalid_argument("collision_terms: table closure without table");
      if (!closure.table->gamma_bar.conforms(grid))
        throw std::invalid_argument("collision_terms: table does not match grid");
      return collision_table(state, closure, grid, include_out, include_in);
    case SelfEnergyClosure::Kind::relaxation_time: {
      const RelaxationParams& r = closure.relax;
      if (!(r.tau_p > 0.0) || !(r.t1 > 0.0) || !(r.t2 > 0.0))
        throw std::invalid_argument(
            "collision_terms: tau_p, t1, t2 must be > 0");
      return collision_relax(state, closure, grid, include_out, include_in);
    }
  }
  return SpinChargeState::zeros(grid);
}

}  // namespace smqt
