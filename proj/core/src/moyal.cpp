#include "smqt/moyal.hpp"

#include <stdexcept>

namespace smqt {

void channel_derivative(const std::vector<double>& f, const ChannelGrid& grid,
                        std::vector<double>& out) {
  const int n = grid.n_q;
  if (static_cast<int>(f.size()) != n)
    throw std::invalid_argument("channel_derivative: profile size != n_q");
  out.assign(n, 0.0);
  const double inv2h = 1.0 / (2.0 * grid.dq);
  if (grid.bc == QBoundary::periodic) {
    for (int i = 0; i < n; ++i) {
      const double fp = f[(i + 1) % n];
      const double fm = f[(i + n - 1) % n];
      out[i] = (fp - fm) * inv2h;
    }
  } else {
    // one-sided second-order stencils at the open ends
    out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2h;
    for (int i = 1; i < n - 1; ++i) out[i] = (f[i + 1] - f[i - 1]) * inv2h;
    out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2h;
  }
}

PhaseField grad_q(const PhaseField& f, const PhaseSpaceGrid& grid) {
  if (!f.conforms(grid))
    throw std::invalid_argument("grad_q: field does not match grid");
  PhaseField out(f.n_q, f.n_py, f.n_px);
  const int n = grid.n_q;
  const double inv2h = 1.0 / (2.0 * grid.dq);
  const std::size_t stride = static_cast<std::size_t>(f.n_py) * f.n_px;
  for (std::size_t j = 0; j < stride; ++j) {
    if (grid.q_boundary == QBoundary::periodic) {
      for (int i = 0; i < n; ++i) {
        const double fp = f.v[((i + 1) % n) * stride + j];
        const double fm = f.v[((i + n - 1) % n) * stride + j];
        out.v[i * stride + j] = (fp - fm) * inv2h;
      }
    } else {
      out.v[j] = (-3.0 * f.v[j] + 4.0 * f.v[stride + j] - f.v[2 * stride + j]) * inv2h;
      for (int i = 1; i < n - 1; ++i)
        out.v[i * stride + j] =
            (f.v[(i + 1) * stride + j] - f.v[(i - 1) * stride + j]) * inv2h;
      out.v[(n - 1) * stride + j] =
          (3.0 * f.v[(n - 1) * stride + j] - 4.0 * f.v[(n - 2) * stride + j] +
           f.v[(n - 3) * stride + j]) * inv2h;
    }
  }
  return out;
}

PhaseField grad_p(const PhaseField& f, const PhaseSpaceGrid& grid, int axis) {
  if (!f.conforms(grid))
    throw std::invalid_argument("grad_p: field does not match grid");
  if (axis < 0 || axis >= grid.momentum_dims)
    throw std::invalid_argument("grad_p: momentum axis out of range");
  PhaseField out(f.n_q, f.n_py, f.n_px);
  const double inv2h = 1.0 / (2.0 * grid.dp);
  // the distribution is zero beyond the momentum cutoff: edge stencils use a
  // zero ghost value
  if (axis == 0) {
    const int n = grid.n_px();
    for (int iq = 0; iq < f.n_q; ++iq)
      for (int ipy = 0; ipy < f.n_py; ++ipy)
        for (int ipx = 0; ipx < n; ++ipx) {
          const double fp = ipx + 1 < n ? f(iq, ipy, ipx + 1) : 0.0;
          const double fm = ipx - 1 >= 0 ? f(iq, ipy, ipx - 1) : 0.0;
          out(iq, ipy, ipx) = (fp - fm) * inv2h;
        }
  } else {
    const int n = grid.n_py();
    for (int iq = 0; iq < f.n_q; ++iq)
      for (int ipy = 0; ipy < n; ++ipy)
        for (int ipx = 0; ipx < f.n_px; ++ipx) {
          const double fp = ipy + 1 < n ? f(iq, ipy + 1, ipx) : 0.0;
          const double fm = ipy - 1 >= 0 ? f(iq, ipy - 1, ipx) : 0.0;
          out(iq, ipy, ipx) = (fp - fm) * inv2h;
        }
  }
  return out;
}

PhaseField poisson_bracket(const PhaseField& a, const PhaseField& b,
                           const PhaseSpaceGrid& grid) {
  require_same_shape(a, b, "poisson_bracket");
  // only p_x has a conjugate position axis in a 1-D channel
  const PhaseField gpa = grad_p(a, grid, 0);
  const PhaseField gqb = grad_q(b, grid);
  const PhaseField gqa = grad_q(a, grid);
  const PhaseField gpb = grad_p(b, grid, 0);
  PhaseField out(a.n_q, a.n_py, a.n_px);
  for (std::size_t i = 0; i < out.v.size(); ++i)
    out.v[i] = gpa.v[i] * gqb.v[i] - gqa.v[i] * gpb.v[i];
  return out;
}

PhaseField anticommutator_leading(const PhaseField& a, const PhaseField& b) {
  require_same_shape(a, b, "anticommutator_leading");
  PhaseField out(a.n_q, a.n_py, a.n_px);
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] = 2.0 * a.v[i] * b.v[i];
  return out;
}

VectorField bracket_cross(const VectorField& a, const VectorField& b,
                          const PhaseSpaceGrid& grid) {
  VectorField out = vector_zeros(grid);
  // (a x_PB b)_i = PB(a_j, b_k) - PB(a_k, b_j) for (i,j,k) cyclic
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    const PhaseField t1 = poisson_bracket(a[j], b[k], grid);
    const PhaseField t2 = poisson_bracket(a[k], b[j], grid);
    for (std::size_t n = 0; n < out[i].v.size(); ++n)
      out[i].v[n] = t1.v[n] - t2.v[n];
  }
  return out;
}

}  // namespace smqt
