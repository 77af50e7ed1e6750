#include "greyhelm/maneuver.hpp"

#include <cmath>
#include <stdexcept>

namespace greyhelm {

void ManeuverSpec::validate(double vessel_delta_max) const {
  if (!(duration > 0.0)) throw std::invalid_argument("ManeuverSpec: duration");
  const double tol = 1e-12;
  switch (kind) {
    case ManeuverKind::kTurning:
      if (std::abs(delta_cmd) > vessel_delta_max + tol)
        throw std::invalid_argument("ManeuverSpec: delta_cmd exceeds steering range");
      break;
    case ManeuverKind::kZigzag:
      if (std::abs(zz_delta) > vessel_delta_max + tol)
        throw std::invalid_argument("ManeuverSpec: zigzag delta exceeds steering range");
      if (!(zz_psi_switch > 0.0))
        throw std::invalid_argument("ManeuverSpec: zigzag switch threshold");
      break;
    case ManeuverKind::kRandom:
      if (std::abs(rand_amplitude) > vessel_delta_max + tol)
        throw std::invalid_argument("ManeuverSpec: random amplitude exceeds range");
      if (!(rand_hold > 0.0)) throw std::invalid_argument("ManeuverSpec: rand_hold");
      if (rand_n_min > rand_n_max || rand_n_min < 0.0)
        throw std::invalid_argument("ManeuverSpec: impeller range");
      break;
  }
  if (n_cmd < 0.0) throw std::invalid_argument("ManeuverSpec: n_cmd");
}

ManeuverKind maneuver_kind_from_string(const std::string& s) {
  if (s == "turning") return ManeuverKind::kTurning;
  if (s == "zigzag") return ManeuverKind::kZigzag;
  if (s == "random") return ManeuverKind::kRandom;
  throw std::invalid_argument("unknown maneuver kind: " + s);
}

std::string to_string(ManeuverKind kind) {
  switch (kind) {
    case ManeuverKind::kTurning: return "turning";
    case ManeuverKind::kZigzag: return "zigzag";
    case ManeuverKind::kRandom: return "random";
  }
  return "?";
}

ControlInput zigzag_controller(double psi, double psi_ref, double current_delta,
                               const ManeuverSpec& spec) {
  double side = current_delta >= 0.0 ? 1.0 : -1.0;
  const double dev = psi - psi_ref;
  if (side > 0.0 && dev >= spec.zz_psi_switch) {
    side = -1.0;
  } else if (side < 0.0 && dev <= -spec.zz_psi_switch) {
    side = 1.0;
  }
  return {side * spec.zz_delta, spec.n_cmd};
}

namespace {

class TurningControllerImpl : public ManeuverController {
 public:
  explicit TurningControllerImpl(const ManeuverSpec& spec) : spec_(spec) {}
  ControlInput next(double, double) override { return {spec_.delta_cmd, spec_.n_cmd}; }

 private:
  ManeuverSpec spec_;
};

class ZigzagControllerImpl : public ManeuverController {
 public:
  ZigzagControllerImpl(const ManeuverSpec& spec, double psi_ref)
      : spec_(spec), psi_ref_(psi_ref), delta_(spec.zz_delta) {}
  ControlInput next(double, double psi) override {
    const ControlInput c = zigzag_controller(psi, psi_ref_, delta_, spec_);
    delta_ = c.delta;
    return c;
  }

 private:
  ManeuverSpec spec_;
  double psi_ref_;
  double delta_;
};

class RandomControllerImpl : public ManeuverController {
 public:
  explicit RandomControllerImpl(const ManeuverSpec& spec)
      : spec_(spec), rng_(spec.rand_seed) {}
  ControlInput next(double t, double) override {
    if (t >= next_delta_switch_ - 1e-9) {
      delta_ = rng_.uniform(-spec_.rand_amplitude, spec_.rand_amplitude);
      next_delta_switch_ += spec_.rand_hold;
    }
    if (t >= next_n_switch_ - 1e-9) {
      n_ = spec_.rand_n_min < spec_.rand_n_max
               ? rng_.uniform(spec_.rand_n_min, spec_.rand_n_max)
               : spec_.n_cmd;
      next_n_switch_ += spec_.rand_n_hold;
    }
    return {delta_, n_};
  }

 private:
  ManeuverSpec spec_;
  Rng rng_;
  double delta_{0.0};
  double n_{0.0};
  double next_delta_switch_{0.0};
  double next_n_switch_{0.0};
};

}  // namespace

std::unique_ptr<ManeuverController> make_controller(const ManeuverSpec& spec,
                                                    double initial_psi) {
  switch (spec.kind) {
    case ManeuverKind::kTurning:
      return std::make_unique<TurningControllerImpl>(spec);
    case ManeuverKind::kZigzag:
      return std::make_unique<ZigzagControllerImpl>(spec, initial_psi);
    case ManeuverKind::kRandom:
      return std::make_unique<RandomControllerImpl>(spec);
  }
  throw std::logic_error("make_controller: unreachable");
}

std::vector<ControlInput> random_steering_sequence(const ManeuverSpec& spec, double dt,
                                                   std::size_t steps) {
  if (spec.rand_hold < dt)
    throw std::invalid_argument("random_steering_sequence: hold interval below dt");
  RandomControllerImpl controller(spec);
  std::vector<ControlInput> seq;
  seq.reserve(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    seq.push_back(controller.next(static_cast<double>(k) * dt, 0.0));
  }
  return seq;
}

}  // namespace greyhelm
