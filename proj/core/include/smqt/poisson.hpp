#pragma once

// 1-D electrostatic solve along the channel:
//   d2phi/dq2 = e (rho - rho_background) / epsilon,   e = +1
// on the standard three-point stencil.
//   - dirichlet: phi pinned to (phi_left, phi_right) at the end nodes, interior
//     solved directly by the Thomas algorithm.
//   - periodic: the stencil is singular with constant null space; the source
//     mean must vanish (|mean| <= solvability_tol or NumericalError), the
//     residual mean is projected out exactly and the zero-mean solution is
//     built by double cumulative summation, which satisfies the stencil
//     identically and is bitwise deterministic.

#include <vector>

#include "smqt/grid.hpp"

namespace smqt {

struct PoissonConfig {
  double epsilon = 1.0;
  double rho_background = 0.0;
  double phi_left = 0.0;   // dirichlet only
  double phi_right = 0.0;  // dirichlet only
  double solvability_tol = 1e-10;

  bool operator==(const PoissonConfig&) const = default;
};

// rho has grid.n_q entries; returns phi on the same nodes. The boundary kind
// follows grid.bc. Throws std::invalid_argument on size mismatch or
// epsilon <= 0, NumericalError on periodic solvability violation.
std::vector<double> solve_poisson(const std::vector<double>& rho,
                                  const PoissonConfig& cfg,
                                  const ChannelGrid& grid);

}  // namespace smqt
