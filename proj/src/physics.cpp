#include "greyhelm/physics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace greyhelm {

MotionState to_prime(const MotionState& s, const NondimScheme& scheme) {
  return {s.u / scheme.u_ref, s.v / scheme.u_ref, s.r * scheme.length / scheme.u_ref};
}

MotionState from_prime(const MotionState& s, const NondimScheme& scheme) {
  return {s.u * scheme.u_ref, s.v * scheme.u_ref, s.r * scheme.u_ref / scheme.length};
}

double jet_thrust(const ControlInput& control, const JetParams& jet, double rho) {
  const double vj = std::max(0.0, jet.a * control.n + jet.b);
  return jet.jet_count * jet.alpha * rho * jet.area * vj * vj * std::cos(control.delta);
}

double surge_accel(const MotionState& s, const ControlInput& control,
                   const VesselParams& params) {
  const double u = s.u;
  const SurgeCoeffs& c = params.surge;
  const double x_hull = c.x_u * u + c.x_uu * u * u + c.x_uuu * u * u * u;
  const double x_prop =
      jet_thrust(control, params.jet, params.nondim.rho) / params.nondim.force_scale();
  return (x_hull + x_prop + params.mass_prime() * s.v * s.r) / params.accel_denom();
}

std::pair<double, double> sway_yaw_accel(const MotionState& s, const ControlInput& control,
                                         const SwayYawCoeffs& c) {
  const double u = s.u, v = s.v, r = s.r, d = control.delta;
  const double dv = c.v_v * v + c.v_r * r + c.v_delta * d + c.v_rrr * r * r * r +
                    c.v_vrdelta * v * r * d + c.v_ur * u * r + c.v_0;
  const double dr = c.r_r * r + c.r_delta * d + c.r_rrr * r * r * r +
                    c.r_vrdelta * v * r * d + c.r_ur * u * r + c.r_rdd * r * d * d +
                    c.r_vrr * v * r * r + c.r_0;
  return {dv, dr};
}

StateDeriv physical_rhs(const MotionState& state, const ControlInput& control,
                        const VesselParams& params) {
  if (!state.finite())
    throw std::invalid_argument("physical_rhs: non-finite state");
  const NondimScheme& ns = params.nondim;
  const MotionState p = to_prime(state, ns);
  const double du_p = surge_accel(p, control, params);
  const auto [dv_p, dr_p] = sway_yaw_accel(p, control, params.swayyaw);
  // prime-time derivatives back to SI: accelerations scale with U^2/L,
  // yaw acceleration with U^2/L^2
  const double a = ns.u_ref * ns.u_ref / ns.length;
  return {du_p * a, dv_p * a, dr_p * a / ns.length};
}

}  // namespace greyhelm
