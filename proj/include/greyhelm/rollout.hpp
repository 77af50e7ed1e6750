#pragma once

#include <variant>
#include <vector>

#include "greyhelm/ffn.hpp"
#include "greyhelm/hybrid.hpp"
#include "greyhelm/maneuver.hpp"
#include "greyhelm/trial_log.hpp"
#include "greyhelm/types.hpp"

namespace greyhelm {

/// Closed-loop prediction output. `diverged` marks a run truncated by the
/// velocity guard; the trajectory then ends at the last healthy sample.
struct Trajectory {
  double dt{0.1};
  std::vector<double> times;
  std::vector<MotionState> states;
  std::vector<Pose> poses;
  std::vector<ControlInput> controls;
  bool diverged{false};
  std::size_t divergence_step{0};

  std::size_t size() const { return times.size(); }
};

/// Planar kinematics, one Euler step: the body velocities rotated to the
/// earth frame advance the position, the yaw rate advances the heading.
Pose integrate_pose(const MotionState& state, const Pose& pose, double dt);

/// Velocity-prediction models selectable for a rollout.
struct PhysicalModel {
  VesselParams params;
  Integrator method{Integrator::kEuler};
};

struct HybridModel {
  VesselParams params;
  FfnWeights weights;
  FeatureScaler scaler;
  Integrator method{Integrator::kEuler};
};

/// Pure data-driven baseline; network accelerations integrated explicitly in
/// prime time.
struct DataDrivenModel {
  FfnWeights weights;
  FeatureScaler scaler;
  NondimScheme scheme;
};

using VelocityModel = std::variant<PhysicalModel, HybridModel, DataDrivenModel>;

/// One velocity update of whichever model, SI units.
MotionState model_step(const VelocityModel& model, const MotionState& state, double psi,
                       const ControlInput& control, double dt);

struct RolloutOptions {
  double dt{0.1};
  std::size_t steps{0};           // control intervals; trajectory has steps+1 samples
  double velocity_bound{50.0};    // m/s; default 10 * U_ref
  double yaw_rate_bound{6.6667};  // rad/s; velocity_bound / length

  static RolloutOptions for_scheme(const NondimScheme& s, double dt, std::size_t steps) {
    return {dt, steps, 10.0 * s.u_ref, 10.0 * s.u_ref / s.length};
  }
};

/// Iterative closed-loop prediction with a per-step controller.
Trajectory rollout(const VelocityModel& model, const MotionState& init,
                   const Pose& init_pose, ManeuverController& controller,
                   const RolloutOptions& opts);

/// Convenience overload building the controller from a maneuver spec.
Trajectory rollout(const VelocityModel& model, const MotionState& init,
                   const Pose& init_pose, const ManeuverSpec& maneuver,
                   double dt, std::size_t steps);

/// Replay rollout against a logged trial: initial state and control sequence
/// from the log.
Trajectory rollout_against_log(const VelocityModel& model, const TrialLog& log);

}  // namespace greyhelm
