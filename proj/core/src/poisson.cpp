#include "smqt/poisson.hpp"

#include <cmath>
#include <stdexcept>

#include "smqt/errors.hpp"

namespace smqt {

namespace {

// phi pinned at both end nodes; interior three-point system solved by the
// Thomas algorithm (diagonally dominant, no pivoting needed)
std::vector<double> solve_dirichlet(const std::vector<double>& g,
                                    const PoissonConfig& cfg,
                                    const ChannelGrid& grid) {
  const int n = grid.n_q;
  const double h2 = grid.dq * grid.dq;
  std::vector<double> phi(n, 0.0);
  phi[0] = cfg.phi_left;
  phi[n - 1] = cfg.phi_right;
  const int m = n - 2;
  std::vector<double> c(m, 0.0), d(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double rhs = h2 * g[i + 1];
    if (i == 0) rhs -= cfg.phi_left;
    if (i == m - 1) rhs -= cfg.phi_right;
    d[i] = rhs;
  }
  // forward sweep of (1, -2, 1)
  double beta = -2.0;
  c[0] = 1.0 / beta;
  d[0] = d[0] / beta;
  for (int i = 1; i < m; ++i) {
    beta = -2.0 - c[i - 1];
    c[i] = 1.0 / beta;
    d[i] = (d[i] - d[i - 1]) / beta;
  }
  for (int i = m - 2; i >= 0; --i) d[i] -= c[i] * d[i + 1];
  for (int i = 0; i < m; ++i) phi[i + 1] = d[i];
  return phi;
}

// Singular periodic stencil: project the source to zero mean, then recover
// the unique zero-mean solution from first differences u_i = phi_{i+1}-phi_i:
//   u_i - u_{i-1} = h^2 g_i  and  sum u_i = 0
// which satisfies the wrapped stencil exactly and needs no transforms.
std::vector<double> solve_periodic(std::vector<double> g,
                                   const ChannelGrid& grid) {
  const int n = grid.n_q;
  const double h2 = grid.dq * grid.dq;
  double mean = 0.0;
  for (double x : g) mean += x;
  mean /= n;
  for (double& x : g) x -= mean;

  std::vector<double> u(n, 0.0);
  double acc = 0.0;
  for (int i = 1; i < n; ++i) {
    acc += h2 * g[i];
    u[i] = acc;  // u_i relative to u_0
  }
  double usum = 0.0;
  for (double x : u) usum += x;
  const double u0 = -usum / n;

  std::vector<double> phi(n, 0.0);
  for (int i = 1; i < n; ++i) phi[i] = phi[i - 1] + (u[i - 1] + u0);
  double pmean = 0.0;
  for (double x : phi) pmean += x;
  pmean /= n;
  for (double& x : phi) x -= pmean;
  return phi;
}

}  // namespace

std::vector<double> solve_poisson(const std::vector<double>& rho,
                                  const PoissonConfig& cfg,
                                  const ChannelGrid& grid) {
  if (static_cast<int>(rho.size()) != grid.n_q)
    throw std::invalid_argument("solve_poisson: rho size != n_q");
  if (!(cfg.epsilon > 0.0))
    throw std::invalid_argument("solve_poisson: epsilon must be > 0");
  if (grid.n_q < 3)
    throw std::invalid_argument("solve_poisson: n_q too small");

  // d2phi/dq2 = e (rho - rho0) / eps, e = +1
  std::vector<double> g(grid.n_q);
  for (int i = 0; i < grid.n_q; ++i)
    g[i] = (rho[i] - cfg.rho_background) / cfg.epsilon;

  if (grid.bc == QBoundary::periodic) {
    double mean = 0.0;
    for (double x : g) mean += x;
    mean /= grid.n_q;
    if (std::abs(mean) > cfg.solvability_tol)
      throw NumericalError(
          "solve_poisson: periodic source mean " + std::to_string(mean) +
          " exceeds solvability tolerance; adjust rho_background");
    return solve_periodic(std::move(g), grid);
  }
  return solve_dirichlet(g, cfg, grid);
}

}  // namespace smqt
