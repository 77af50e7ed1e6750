#pragma once

#include <utility>

#include "greyhelm/types.hpp"

namespace greyhelm {

/// Convert body velocities to prime (dimensionless) units.
MotionState to_prime(const MotionState& s, const NondimScheme& scheme);

/// Inverse of to_prime.
MotionState from_prime(const MotionState& s, const NondimScheme& scheme);

/// Total water-jet thrust along the body x-axis, in newtons.
/// V_j = max(0, a*n + b); X_P = jet_count * alpha * rho * A_j * V_j^2 * cos(delta).
double jet_thrust(const ControlInput& control, const JetParams& jet, double rho);

/// Dimensionless surge acceleration from the cubic hull resistance, thrust
/// and the mass-coupling term. State must already be in prime units.
double surge_accel(const MotionState& prime_state, const ControlInput& control,
                   const VesselParams& params);

/// Dimensionless sway and yaw accelerations from the lumped polynomials.
/// State must already be in prime units.
std::pair<double, double> sway_yaw_accel(const MotionState& prime_state,
                                         const ControlInput& control,
                                         const SwayYawCoeffs& coeffs);

/// Right-hand side of the vessel ODE in SI units: converts to prime,
/// evaluates the acceleration polynomials, converts back.
/// Throws std::invalid_argument on non-finite state.
StateDeriv physical_rhs(const MotionState& state, const ControlInput& control,
                        const VesselParams& params);

}  // namespace greyhelm
