#pragma once

// Leading-order lattice-Weyl calculus on the grid.
//
// The gradient-expansion rules implemented here are
//   commutator     [A, B]  ->  bracket structure  sum (d_p a d_q b - d_q a d_p b)
//   anticommutator {A, B}  ->  2 a b  (pointwise)
// poisson_bracket returns the *raw* bracket; each transport term applies its
// own printed prefactor. The bracket couples a momentum axis to its conjugate
// position axis: with a 1-D channel only p_x has one, so the p_y derivatives
// never enter the bracket (there is no q_y dependence to pair them with).
//
// Difference kernels: second-order central in the interior; periodic wrap or
// one-sided second-order stencils at dirichlet_inflow position edges; momentum
// edges treat the field as zero beyond the cutoff.

#include "smqt/phase_field.hpp"

namespace smqt {

PhaseField grad_q(const PhaseField& f, const PhaseSpaceGrid& grid);

// axis 0 = p_x, axis 1 = p_y (axis 1 requires a 2-D momentum grid)
PhaseField grad_p(const PhaseField& f, const PhaseSpaceGrid& grid, int axis = 0);

// sum over conjugate pairs of (d_p a)(d_q b) - (d_q a)(d_p b); antisymmetric
// under a<->b exactly (the two products commute and IEEE negation is exact)
PhaseField poisson_bracket(const PhaseField& a, const PhaseField& b,
                           const PhaseSpaceGrid& grid);

// leading-order anticommutator: 2 a b pointwise
PhaseField anticommutator_leading(const PhaseField& a, const PhaseField& b);

// (a x_PB b)_i = eps_ijk PB(a_j, b_k): the bracket-valued cross product the
// vector torque lines are written with
VectorField bracket_cross(const VectorField& a, const VectorField& b,
                          const PhaseSpaceGrid& grid);

// Shared 1-D derivative kernel along the channel (also used for -dPhi/dq);
// out and f have n entries.
void channel_derivative(const std::vector<double>& f, const ChannelGrid& grid,
                        std::vector<double>& out);

}  // namespace smqt
