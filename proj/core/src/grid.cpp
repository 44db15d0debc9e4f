#include "smqt/grid.hpp"

#include <stdexcept>

namespace smqt {

PhaseSpaceGrid make_grid(const GridConfig& cfg) {
  if (cfg.n_q < 4)
    throw std::invalid_argument("make_grid: n_q must be >= 4");
  if (cfg.n_p < 4)
    throw std::invalid_argument("make_grid: n_p must be >= 4");
  if (cfg.momentum_dims != 1 && cfg.momentum_dims != 2)
    throw std::invalid_argument("make_grid: momentum_dims must be 1 or 2");
  if (!(cfg.q_max > cfg.q_min))
    throw std::invalid_argument("make_grid: q_max must exceed q_min");
  if (!(cfg.p_max > cfg.p_min))
    throw std::invalid_argument("make_grid: p_max must exceed p_min");
  if (cfg.p_min != -cfg.p_max)
    throw std::invalid_argument("make_grid: momentum range must be symmetric (p_min = -p_max)");

  PhaseSpaceGrid g;
  g.n_q = cfg.n_q;
  g.n_p = cfg.n_p;
  g.momentum_dims = cfg.momentum_dims;
  g.q_min = cfg.q_min;
  g.q_max = cfg.q_max;
  g.p_min = cfg.p_min;
  g.p_max = cfg.p_max;
  g.q_boundary = cfg.q_boundary;
  // periodic: node n_q coincides with node 0; open: both endpoints stored
  g.dq = (cfg.q_boundary == QBoundary::periodic)
             ? (cfg.q_max - cfg.q_min) / cfg.n_q
             : (cfg.q_max - cfg.q_min) / (cfg.n_q - 1);
  g.dp = (cfg.p_max - cfg.p_min) / (cfg.n_p - 1);
  return g;
}

std::string to_string(QBoundary b) {
  return b == QBoundary::periodic ? "periodic" : "dirichlet_inflow";
}

}  // namespace smqt
