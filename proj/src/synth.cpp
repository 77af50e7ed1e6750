#include "greyhelm/synth.hpp"

#include <cmath>
#include <stdexcept>

#include "greyhelm/integrate.hpp"
#include "greyhelm/physics.hpp"
#include "greyhelm/rng.hpp"
#include "greyhelm/rollout.hpp"

namespace greyhelm {

DisturbanceSpec DisturbanceSpec::none() {
  DisturbanceSpec d;
  d.current_speed = 0.0;
  d.wave_amp_v = 0.0;
  d.wave_amp_r = 0.0;
  d.wavedrift_amp_v = 0.0;
  d.wavedrift_amp_r = 0.0;
  d.noise_std_u = 0.0;
  d.noise_std_v = 0.0;
  d.noise_std_r = 0.0;
  return d;
}

bool DisturbanceSpec::is_zero() const {
  return current_speed == 0.0 && wave_amp_v == 0.0 && wave_amp_r == 0.0 &&
         wavedrift_amp_v == 0.0 && wavedrift_amp_r == 0.0 && noise_std_u == 0.0 &&
         noise_std_v == 0.0 && noise_std_r == 0.0;
}

void DisturbanceSpec::validate() const {
  if (current_speed < 0.0)
    throw std::invalid_argument("DisturbanceSpec: current_speed must be >= 0");
  if (noise_std_u < 0.0 || noise_std_v < 0.0 || noise_std_r < 0.0)
    throw std::invalid_argument("DisturbanceSpec: noise stds must be >= 0");
}

namespace {

struct DisturbedRhs {
  const VesselParams& params;
  const DisturbanceSpec& dist;
  double t;    // time at the start of the step
  double psi;  // heading held over the step for the drift term

  StateDeriv at(const MotionState& s, const ControlInput& c, double tau) const {
    StateDeriv d = physical_rhs(s, c, params);
    const NondimScheme& ns = params.nondim;
    const double a = ns.u_ref * ns.u_ref / ns.length;
    const double wave = std::sin(dist.wave_freq * tau);
    const double drift = std::sin(psi - dist.wave_dir);
    d.dv += (dist.wave_amp_v * wave + dist.wavedrift_amp_v * drift) * a;
    d.dr += (dist.wave_amp_r * wave + dist.wavedrift_amp_r * drift) * a / ns.length;
    return d;
  }
};

MotionState rk4_disturbed(const DisturbedRhs& rhs, const MotionState& s,
                          const ControlInput& c, double dt) {
  const StateDeriv k1 = rhs.at(s, c, rhs.t);
  const StateDeriv k2 = rhs.at(detail::axpy(s, 0.5 * dt, k1), c, rhs.t + 0.5 * dt);
  const StateDeriv k3 = rhs.at(detail::axpy(s, 0.5 * dt, k2), c, rhs.t + 0.5 * dt);
  const StateDeriv k4 = rhs.at(detail::axpy(s, dt, k3), c, rhs.t + dt);
  const double h = dt / 6.0;
  return {s.u + h * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du),
          s.v + h * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv),
          s.r + h * (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr)};
}

}  // namespace

TruthStepResult truth_step(const MotionState& state, const Pose& pose,
                           const ControlInput& control, const VesselParams& params,
                           const DisturbanceSpec& dist, double t, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("truth_step: dt must be positive");
  const double c = std::cos(pose.psi), s = std::sin(pose.psi);
  const double gx = state.u * c - state.v * s + dist.current_speed * std::cos(dist.current_dir);
  const double gy = state.u * s + state.v * c + dist.current_speed * std::sin(dist.current_dir);
  const Pose next_pose{pose.x + dt * gx, pose.y + dt * gy, pose.psi + dt * state.r};
  const DisturbedRhs rhs{params, dist, t, pose.psi};
  return {rk4_disturbed(rhs, state, control, dt), next_pose};
}

TrialLog generate_trial(const ManeuverSpec& maneuver, const VesselParams& params,
                        const DisturbanceSpec& dist, double duration, std::uint64_t seed,
                        const GenerateOptions& opts) {
  if (duration < 10.0) throw std::invalid_argument("generate_trial: duration < 10 s");
  if (opts.substeps < 1) throw std::invalid_argument("generate_trial: substeps < 1");
  maneuver.validate(params.delta_max);
  dist.validate();

  ManeuverSpec spec = maneuver;
  if (spec.kind == ManeuverKind::kRandom && spec.rand_seed == 0)
    spec.rand_seed = mix_seed(seed, 0x6d616e65ULL);
  auto controller = make_controller(spec, opts.init_pose.psi);
  Rng noise(mix_seed(seed ^ dist.seed, 0x6e6f6973ULL));

  const std::size_t steps = static_cast<std::size_t>(std::llround(duration / opts.log_dt));
  const double sub_dt = opts.log_dt / opts.substeps;

  TrialLog log;
  log.dt = opts.log_dt;
  log.rows.reserve(steps + 1);

  MotionState state = opts.init_state;
  Pose pose = opts.init_pose;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * opts.log_dt;
    const ControlInput control = controller->next(t, pose.psi);

    LogRow row;
    row.t = t;
    row.x = pose.x;
    row.y = pose.y;
    row.psi = pose.psi;
    // a ground-referenced velocity sensor reports body velocity plus the
    // current projected into the body frame
    row.u = state.u + dist.current_speed * std::cos(dist.current_dir - pose.psi) +
            noise.normal(0.0, dist.noise_std_u);
    row.v = state.v + dist.current_speed * std::sin(dist.current_dir - pose.psi) +
            noise.normal(0.0, dist.noise_std_v);
    row.r = state.r + noise.normal(0.0, dist.noise_std_r);
    row.delta = control.delta;
    row.n = control.n;
    log.rows.push_back(row);
    if (k == steps) break;

    for (int j = 0; j < opts.substeps; ++j) {
      const auto [next_state, next_pose] =
          truth_step(state, pose, control, params, dist, t + j * sub_dt, sub_dt);
      state = next_state;
      pose = next_pose;
    }
  }
  return log;
}

std::vector<ManeuverSpec> standard_train_specs(const DatasetConfig& cfg) {
  constexpr double kDeg = M_PI / 180.0;
  ManeuverSpec random;
  random.kind = ManeuverKind::kRandom;
  random.name = "train_random";
  random.duration = cfg.random_duration;
  random.n_cmd = cfg.n_cmd;
  random.rand_hold = cfg.rand_hold;
  random.rand_n_hold = cfg.rand_n_hold;
  random.rand_n_min = cfg.rand_n_min;
  random.rand_n_max = cfg.rand_n_max;

  auto turning = [&](const char* name, double deg, double duration) {
    ManeuverSpec m;
    m.kind = ManeuverKind::kTurning;
    m.name = name;
    m.duration = duration;
    m.n_cmd = cfg.n_cmd;
    m.delta_cmd = deg * kDeg;
    return m;
  };
  return {random, turning("train_turn25s", cfg.train_turn_deg_a, cfg.train_turn_duration),
          turning("train_turn15p", cfg.train_turn_deg_b, cfg.train_turn_duration)};
}

std::vector<ManeuverSpec> standard_test_specs(const DatasetConfig& cfg) {
  constexpr double kDeg = M_PI / 180.0;
  auto turning = [&](const char* name, double deg) {
    ManeuverSpec m;
    m.kind = ManeuverKind::kTurning;
    m.name = name;
    m.duration = cfg.test_turn_duration;
    m.n_cmd = cfg.n_cmd;
    m.delta_cmd = deg * kDeg;
    return m;
  };
  ManeuverSpec zz;
  zz.kind = ManeuverKind::kZigzag;
  zz.name = "test_zigzag";
  zz.duration = cfg.zigzag_duration;
  zz.n_cmd = cfg.n_cmd;
  zz.zz_delta = cfg.zigzag_amp_deg * kDeg;
  zz.zz_psi_switch = cfg.zigzag_switch_deg * kDeg;
  return {turning("test_turn23s", cfg.test_turn_deg_a),
          turning("test_turn30s", cfg.test_turn_deg_b),
          turning("test_turn20p", cfg.test_turn_deg_c), zz};
}

TrialSet standard_dataset(const VesselParams& params, const DisturbanceSpec& dist,
                          std::uint64_t global_seed, const DatasetConfig& cfg) {
  TrialSet set;
  std::uint64_t salt = 1;
  for (const ManeuverSpec& spec : standard_train_specs(cfg)) {
    const std::uint64_t seed = mix_seed(global_seed, salt++);
    set.train.push_back({spec, generate_trial(spec, params, dist, spec.duration, seed),
                         seed, true});
  }
  // distinct salt block so test streams never reuse train randomness
  salt = 101;
  for (const ManeuverSpec& spec : standard_test_specs(cfg)) {
    const std::uint64_t seed = mix_seed(global_seed, salt++);
    set.test.push_back({spec, generate_trial(spec, params, dist, spec.duration, seed),
                        seed, false});
  }
  return set;
}

}  // namespace greyhelm
