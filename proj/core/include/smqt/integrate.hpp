#pragma once

// Classical RK4 over any state type providing the three customization
// points below (found by ADL):
//   State axpy_state(const State& y, double h, const State& k);  // y + h k, time advanced by h
//   void accumulate_state(State& y, double s, const State& k);   // y += s k, time untouched
//   void set_state_time(State& y, double t);
// The stage arithmetic runs in a fixed order so repeated evaluation is
// bitwise reproducible.

#include <utility>

namespace smqt {

template <class State, class Rhs>
State rk4_step(const State& y, double dt, Rhs&& rhs) {
  const State k1 = rhs(y);
  const State k2 = rhs(axpy_state(y, 0.5 * dt, k1));
  const State k3 = rhs(axpy_state(y, 0.5 * dt, k2));
  const State k4 = rhs(axpy_state(y, dt, k3));

  State out = axpy_state(y, dt / 6.0, k1);
  accumulate_state(out, dt / 3.0, k2);
  accumulate_state(out, dt / 3.0, k3);
  accumulate_state(out, dt / 6.0, k4);
  set_state_time(out, state_time(y) + dt);
  return out;
}

}  // namespace smqt
