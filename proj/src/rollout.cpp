#include "greyhelm/rollout.hpp"

#include <cmath>
#include <stdexcept>

namespace greyhelm {

Pose integrate_pose(const MotionState& state, const Pose& pose, double dt) {
  const double c = std::cos(pose.psi), s = std::sin(pose.psi);
  return {pose.x + dt * (state.u * c - state.v * s),
          pose.y + dt * (state.u * s + state.v * c), pose.psi + dt * state.r};
}

MotionState model_step(const VelocityModel& model, const MotionState& state, double psi,
                       const ControlInput& control, double dt) {
  if (const auto* phys = std::get_if<PhysicalModel>(&model)) {
    return physical_step(phys->params, state, control, dt, phys->method);
  }
  if (const auto* hyb = std::get_if<HybridModel>(&model)) {
    return hybrid_step(hyb->params, hyb->weights, hyb->scaler, state, psi, control, dt,
                       hyb->method);
  }
  const auto& dd = std::get<DataDrivenModel>(model);
  const MotionState p = to_prime(state, dd.scheme);
  const StateDeriv accel = pure_datadriven_forward(dd.weights, dd.scaler, p, psi, control);
  const double dt_prime = dt / dd.scheme.time_scale();
  return from_prime(
      {p.u + dt_prime * accel.du, p.v + dt_prime * accel.dv, p.r + dt_prime * accel.dr},
      dd.scheme);
}

Trajectory rollout(const VelocityModel& model, const MotionState& init,
                   const Pose& init_pose, ManeuverController& controller,
                   const RolloutOptions& opts) {
  if (opts.steps < 1) throw std::invalid_argument("rollout: steps must be >= 1");
  Trajectory traj;
  traj.dt = opts.dt;
  traj.times.reserve(opts.steps + 1);
  traj.states.reserve(opts.steps + 1);
  traj.poses.reserve(opts.steps + 1);
  traj.controls.reserve(opts.steps + 1);

  MotionState state = init;
  Pose pose = init_pose;
  for (std::size_t k = 0; k <= opts.steps; ++k) {
    const double t = static_cast<double>(k) * opts.dt;
    const ControlInput control = controller.next(t, pose.psi);
    traj.times.push_back(t);
    traj.states.push_back(state);
    traj.poses.push_back(pose);
    traj.controls.push_back(control);
    if (k == opts.steps) break;

    const Pose next_pose = integrate_pose(state, pose, opts.dt);
    const MotionState next = model_step(model, state, pose.psi, control, opts.dt);
    const bool bad = !next.finite() || std::abs(next.u) > opts.velocity_bound ||
                     std::abs(next.v) > opts.velocity_bound ||
                     std::abs(next.r) > opts.yaw_rate_bound;
    if (bad) {
      // truncate at the last healthy sample instead of propagating the blow-up
      traj.diverged = true;
      traj.divergence_step = k + 1;
      break;
    }
    state = next;
    pose = next_pose;
  }
  return traj;
}

Trajectory rollout(const VelocityModel& model, const MotionState& init,
                   const Pose& init_pose, const ManeuverSpec& maneuver, double dt,
                   std::size_t steps) {
  auto controller = make_controller(maneuver, init_pose.psi);
  NondimScheme scheme;
  if (const auto* phys = std::get_if<PhysicalModel>(&model)) scheme = phys->params.nondim;
  if (const auto* hyb = std::get_if<HybridModel>(&model)) scheme = hyb->params.nondim;
  if (const auto* dd = std::get_if<DataDrivenModel>(&model)) scheme = dd->scheme;
  return rollout(model, init, init_pose, *controller,
                 RolloutOptions::for_scheme(scheme, dt, steps));
}

Trajectory rollout_against_log(const VelocityModel& model, const TrialLog& log) {
  if (log.size() < 2) throw std::invalid_argument("rollout_against_log: log too short");
  std::vector<ControlInput> seq;
  seq.reserve(log.size());
  for (const LogRow& row : log.rows) seq.push_back({row.delta, row.n});
  ReplayController controller(std::move(seq));
  const LogRow& first = log.rows.front();
  NondimScheme scheme;
  if (const auto* phys = std::get_if<PhysicalModel>(&model)) scheme = phys->params.nondim;
  if (const auto* hyb = std::get_if<HybridModel>(&model)) scheme = hyb->params.nondim;
  if (const auto* dd = std::get_if<DataDrivenModel>(&model)) scheme = dd->scheme;
  return rollout(model, {first.u, first.v, first.r}, {first.x, first.y, first.psi},
                 controller, RolloutOptions::for_scheme(scheme, log.dt, log.size() - 1));
}

}  // namespace greyhelm
