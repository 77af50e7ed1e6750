#pragma once

#include <cstdint>
#include <vector>

#include "greyhelm/maneuver.hpp"
#include "greyhelm/trial_log.hpp"
#include "greyhelm/types.hpp"

namespace greyhelm {

/// Synthetic environment: a constant earth-frame current (kinematic drift),
/// time-sinusoidal wave forcing, heading-locked wave-drift forcing on sway
/// and yaw, and Gaussian measurement noise. The current and the heading-
/// locked terms produce the heading-periodic velocity signatures a
/// ground-referenced sensor sees in real trials.
struct DisturbanceSpec {
  double current_speed{0.2};  // m/s
  double current_dir{0.7};    // rad, earth frame

  double wave_amp_v{0.002};   // prime acceleration amplitude, sin(wave_freq*t)
  double wave_amp_r{0.0005};
  double wave_freq{0.8};      // rad/s

  double wave_dir{2.3};          // rad, earth frame
  double wavedrift_amp_v{0.002}; // prime accel amplitude, sin(psi - wave_dir)
  double wavedrift_amp_r{0.004};

  double noise_std_u{0.003};  // m/s
  double noise_std_v{0.003};  // m/s
  double noise_std_r{1e-4};   // rad/s

  std::uint64_t seed{0};

  static DisturbanceSpec none();
  bool is_zero() const;
  void validate() const;
};

/// One truth-simulator step: RK4 on the physical right-hand side plus the
/// wave terms, pose advanced with the earth-frame ground velocity (body
/// velocity rotated to earth plus the current vector).
struct TruthStepResult {
  MotionState state;
  Pose pose;
};
TruthStepResult truth_step(const MotionState& state, const Pose& pose,
                           const ControlInput& control, const VesselParams& params,
                           const DisturbanceSpec& dist, double t, double dt);

struct GenerateOptions {
  double log_dt{0.1};
  int substeps{10};  // internal RK4 steps per logged sample
  MotionState init_state{};
  Pose init_pose{};
};

/// Closed-loop truth simulation logged at 10 Hz. Logged velocities are body
/// velocities plus the body-frame projection of the current plus measurement
/// noise; positions and heading come from the truth pose.
TrialLog generate_trial(const ManeuverSpec& maneuver, const VesselParams& params,
                        const DisturbanceSpec& dist, double duration,
                        std::uint64_t seed, const GenerateOptions& opts = {});

/// Trial durations and maneuver parameters of the standard experiment.
struct DatasetConfig {
  double random_duration{600.0};
  double train_turn_duration{300.0};
  double test_turn_duration{600.0};
  double zigzag_duration{240.0};
  double n_cmd{5000.0};
  double train_turn_deg_a{25.0};   // starboard
  double train_turn_deg_b{-15.0};  // port
  double test_turn_deg_a{23.0};
  double test_turn_deg_b{30.0};
  double test_turn_deg_c{-20.0};
  double zigzag_amp_deg{30.0};
  double zigzag_switch_deg{10.0};
  double rand_hold{5.0};
  double rand_n_hold{20.0};
  double rand_n_min{2000.0};
  double rand_n_max{5000.0};
};

struct NamedTrial {
  ManeuverSpec spec;
  TrialLog log;
  std::uint64_t seed{0};
  bool is_train{false};
};

struct TrialSet {
  std::vector<NamedTrial> train;
  std::vector<NamedTrial> test;
};

/// The standard split: train on one random-steering run and two turning
/// circles, test on three turning circles and one zigzag. Seeds derive from
/// the global seed; train and test streams never coincide.
TrialSet standard_dataset(const VesselParams& params, const DisturbanceSpec& dist,
                          std::uint64_t global_seed, const DatasetConfig& cfg = {});

/// Maneuver specs of the standard split without generating the logs.
std::vector<ManeuverSpec> standard_train_specs(const DatasetConfig& cfg);
std::vector<ManeuverSpec> standard_test_specs(const DatasetConfig& cfg);

}  // namespace greyhelm
