#pragma once

#include <optional>
#include <vector>

#include "greyhelm/rollout.hpp"
#include "greyhelm/trial_log.hpp"

namespace greyhelm {

struct ChannelRmse {
  double u{0.0};
  double v{0.0};
  double r{0.0};
  double total() const { return u + v + r; }
};

/// Per-channel root-mean-square velocity error between two equally long
/// series. Throws std::invalid_argument on length mismatch.
ChannelRmse rmse(const Trajectory& predicted, const Trajectory& truth);
ChannelRmse rmse(const Trajectory& predicted, const TrialLog& truth);

struct CircleFit {
  double cx{0.0};
  double cy{0.0};
  double radius{0.0};
};

/// Algebraic least-squares circle fit (Kasa): minimizes the linearized
/// residual x^2 + y^2 + A x + B y + C in closed form. Returns nullopt for
/// degenerate input (fewer than 3 points or a singular normal matrix).
std::optional<CircleFit> fit_circle_kasa(const std::vector<Pose>& points,
                                         std::size_t first = 0);

/// Total accumulated |heading change| along a trajectory, radians.
double total_heading_change(const std::vector<Pose>& poses);

/// Steady-turn diameter: discards everything before the first full 360 deg
/// of heading change, fits a circle to the rest. Requires at least 540 deg
/// of total heading change or throws std::invalid_argument ("no steady turn").
double turning_diameter(const Trajectory& traj);
double turning_diameter(const TrialLog& log);

/// Diameters fitted over successive full revolutions (each 360 deg of
/// heading change), for steadiness checks.
std::vector<double> per_revolution_diameters(const std::vector<Pose>& poses);

}  // namespace greyhelm
