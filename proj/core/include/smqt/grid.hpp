#pragma once

// Uniform tensor-product phase-space grid: one periodic or open position axis
// (a 1-D channel along x) times one or two bounded momentum axes.
//
// Conventions, fixed project-wide:
//   - natural units hbar = m* = |e| = c = 1
//   - position spacing dq = (q_max - q_min) / n_q        (periodic)
//                      dq = (q_max - q_min) / (n_q - 1)  (dirichlet_inflow)
//   - momentum spacing dp = (p_max - p_min) / (n_p - 1), nodes include both
//     endpoints; the momentum range must be symmetric (p_min = -p_max) and the
//     distribution is treated as zero beyond the cutoff.

#include <cstddef>
#include <string>

namespace smqt {

enum class QBoundary { periodic, dirichlet_inflow };

struct GridConfig {
  int n_q = 0;
  int n_p = 0;            // nodes per momentum axis
  int momentum_dims = 1;  // 1 or 2
  double q_min = 0.0;
  double q_max = 0.0;
  double p_min = 0.0;
  double p_max = 0.0;
  QBoundary q_boundary = QBoundary::periodic;

  bool operator==(const GridConfig&) const = default;
};

// Spatial cross-section of the phase-space grid; also used standalone by the
// Poisson solver and the Bloch reference model.
struct ChannelGrid {
  int n_q = 0;
  double q_min = 0.0;
  double q_max = 0.0;
  double dq = 0.0;
  QBoundary bc = QBoundary::periodic;

  double q_at(int i) const { return q_min + i * dq; }
};

struct PhaseSpaceGrid {
  int n_q = 0;
  int n_p = 0;
  int momentum_dims = 1;
  double q_min = 0.0, q_max = 0.0;
  double p_min = 0.0, p_max = 0.0;
  QBoundary q_boundary = QBoundary::periodic;
  double dq = 0.0;
  double dp = 0.0;

  int n_px() const { return n_p; }
  int n_py() const { return momentum_dims == 2 ? n_p : 1; }
  std::size_t nodes() const {
    return static_cast<std::size_t>(n_q) * n_py() * n_px();
  }

  double q_at(int iq) const { return q_min + iq * dq; }
  double p_at(int ip) const { return p_min + ip * dp; }
  // p_y coordinate of a node; identically zero for a 1-D momentum grid.
  double py_at(int ipy) const { return momentum_dims == 2 ? p_at(ipy) : 0.0; }

  // momentum volume element dp^momentum_dims
  double dp_volume() const { return momentum_dims == 2 ? dp * dp : dp; }

  ChannelGrid channel() const { return {n_q, q_min, q_max, dq, q_boundary}; }

  bool same_shape(const PhaseSpaceGrid& o) const {
    return n_q == o.n_q && n_p == o.n_p && momentum_dims == o.momentum_dims;
  }
};

// Validates and builds a grid. Throws std::invalid_argument naming the
// offending parameter (n_q < 4, n_p < 4, bad dims, empty or asymmetric
// momentum range, inverted position range).
PhaseSpaceGrid make_grid(const GridConfig& cfg);

std::string to_string(QBoundary b);

}  // namespace smqt
