#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace greyhelm {

/// Body-frame velocities of a surface vessel (SI units).
struct MotionState {
  double u{0.0};  // surge velocity, m/s
  double v{0.0};  // sway velocity, m/s
  double r{0.0};  // yaw rate, rad/s

  bool finite() const {
    return std::isfinite(u) && std::isfinite(v) && std::isfinite(r);
  }
};

/// Earth-frame position and heading. psi is kept unwrapped so cumulative
/// heading change is meaningful.
struct Pose {
  double x{0.0};    // north, m
  double y{0.0};    // east, m
  double psi{0.0};  // heading, rad

  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(psi);
  }
};

/// Actuator commands: steering angle and impeller speed.
struct ControlInput {
  double delta{0.0};  // steering angle, rad
  double n{0.0};      // impeller speed, rpm
};

/// Time derivative of MotionState.
struct StateDeriv {
  double du{0.0};  // m/s^2
  double dv{0.0};  // m/s^2
  double dr{0.0};  // rad/s^2
};

/// Prime-system scales: length L, reference speed U, water density rho.
/// Velocities divide by U, yaw rate multiplies by L/U, forces divide by
/// (1/2) rho L^2 U^2 and masses by (1/2) rho L^3.
struct NondimScheme {
  double length{7.5};    // m
  double u_ref{5.0};     // m/s
  double rho{1000.0};    // kg/m^3

  double force_scale() const { return 0.5 * rho * length * length * u_ref * u_ref; }
  double mass_scale() const { return 0.5 * rho * length * length * length; }
  double time_scale() const { return length / u_ref; }

  void validate() const {
    if (!(length > 0.0) || !(u_ref > 0.0) || !(rho > 0.0))
      throw std::invalid_argument("NondimScheme: length, u_ref and rho must be positive");
  }
};

/// Dimensionless surge coefficients: added mass x_udot and the cubic hull
/// resistance polynomial.
struct SurgeCoeffs {
  double x_udot{0.0};
  double x_u{0.0};
  double x_uu{0.0};
  double x_uuu{0.0};
};

/// Dimensionless lumped coefficients of the sway and yaw acceleration
/// polynomials. 7 sway slots and 8 yaw slots.
struct SwayYawCoeffs {
  // sway: dv' = v_v*v' + v_r*r' + v_delta*d + v_rrr*r'^3 + v_vrdelta*v'r'd
  //           + v_ur*u'r' + v_0
  double v_v{0.0};
  double v_r{0.0};
  double v_delta{0.0};
  double v_rrr{0.0};
  double v_vrdelta{0.0};
  double v_ur{0.0};
  double v_0{0.0};
  // yaw: dr' = r_r*r' + r_delta*d + r_rrr*r'^3 + r_vrdelta*v'r'd + r_ur*u'r'
  //          + r_rdd*r'd^2 + r_vrr*v'r'^2 + r_0
  double r_r{0.0};
  double r_delta{0.0};
  double r_rrr{0.0};
  double r_vrdelta{0.0};
  double r_ur{0.0};
  double r_rdd{0.0};
  double r_vrr{0.0};
  double r_0{0.0};

  static constexpr int kSwayTerms = 7;
  static constexpr int kYawTerms = 8;
};

/// Water-jet propulsion constants. Nozzle outflow speed follows the linear
/// map V_j = a*n + b, clamped at zero (no reverse thrust model).
struct JetParams {
  double alpha{0.95};   // momentum utilization factor
  double area{0.016};   // nozzle area, m^2
  double a{0.0075};     // (m/s) per rpm
  double b{-7.0};       // m/s
  int jet_count{1};

  void validate() const {
    if (!(alpha > 0.0) || alpha > 1.0)
      throw std::invalid_argument("JetParams: alpha must be in (0, 1]");
    if (!(area > 0.0)) throw std::invalid_argument("JetParams: area must be positive");
    if (jet_count < 1) throw std::invalid_argument("JetParams: jet_count must be >= 1");
  }
};

/// Full vessel description: rigid-body mass, hydrodynamic coefficients,
/// propulsion and the nondimensionalization scheme they are expressed in.
struct VesselParams {
  double mass{3000.0};  // kg
  SurgeCoeffs surge;
  SwayYawCoeffs swayyaw;
  JetParams jet;
  NondimScheme nondim;
  double delta_max{0.5235987755982988};  // 30 deg, rad

  double mass_prime() const { return mass / nondim.mass_scale(); }
  /// Denominator of the surge acceleration, (m' - x_udot').
  double accel_denom() const { return mass_prime() - surge.x_udot; }

  void validate() const {
    nondim.validate();
    jet.validate();
    if (!(mass > 0.0)) throw std::invalid_argument("VesselParams: mass must be positive");
    if (!(delta_max > 0.0))
      throw std::invalid_argument("VesselParams: delta_max must be positive");
    if (!(accel_denom() > 0.0))
      throw std::invalid_argument(
          "VesselParams: (m' - x_udot') must be positive, got " +
          std::to_string(accel_denom()));
  }
};

/// Catalogued coefficient set of the reference 7.5 m water-jet vessel used
/// throughout the test pipeline as ground truth.
VesselParams reference_vessel();

}  // namespace greyhelm
