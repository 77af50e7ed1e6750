#pragma once

#include "greyhelm/types.hpp"

namespace greyhelm {

enum class Integrator { kEuler, kRk4 };

namespace detail {

inline MotionState axpy(const MotionState& s, double h, const StateDeriv& d) {
  return {s.u + h * d.du, s.v + h * d.dv, s.r + h * d.dr};
}

}  // namespace detail

/// One explicit Euler step. Control is held constant over the step.
/// dt == 0 returns the input state unchanged.
template <class Rhs>
MotionState euler_step(Rhs&& rhs, const MotionState& state, const ControlInput& control,
                       double dt) {
  return detail::axpy(state, dt, rhs(state, control));
}

/// One classical fourth-order Runge-Kutta step, control held constant.
template <class Rhs>
MotionState rk4_step(Rhs&& rhs, const MotionState& state, const ControlInput& control,
                     double dt) {
  const StateDeriv k1 = rhs(state, control);
  const StateDeriv k2 = rhs(detail::axpy(state, 0.5 * dt, k1), control);
  const StateDeriv k3 = rhs(detail::axpy(state, 0.5 * dt, k2), control);
  const StateDeriv k4 = rhs(detail::axpy(state, dt, k3), control);
  const double h = dt / 6.0;
  return {state.u + h * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du),
          state.v + h * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv),
          state.r + h * (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr)};
}

template <class Rhs>
MotionState integrate_step(Integrator method, Rhs&& rhs, const MotionState& state,
                           const ControlInput& control, double dt) {
  if (method == Integrator::kRk4) return rk4_step(rhs, state, control, dt);
  return euler_step(rhs, state, control, dt);
}

}  // namespace greyhelm
