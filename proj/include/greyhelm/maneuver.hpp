#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "greyhelm/rng.hpp"
#include "greyhelm/types.hpp"

namespace greyhelm {

enum class ManeuverKind { kTurning, kZigzag, kRandom };

/// Declarative description of a trial maneuver.
struct ManeuverSpec {
  ManeuverKind kind{ManeuverKind::kTurning};
  std::string name;
  double duration{300.0};  // s
  double n_cmd{5000.0};    // rpm, constant for turning/zigzag

  // turning
  double delta_cmd{0.0};   // rad, signed (negative = port)

  // zigzag
  double zz_delta{0.5235987755982988};      // rad
  double zz_psi_switch{0.17453292519943295}; // rad (10 deg)

  // random steering; impeller speed steps keep the surge dynamics excited
  double rand_hold{5.0};        // s per steering segment
  double rand_amplitude{0.5235987755982988};  // rad
  double rand_n_hold{20.0};     // s per impeller segment
  double rand_n_min{2000.0};    // rpm
  double rand_n_max{5000.0};    // rpm
  std::uint64_t rand_seed{0};

  void validate(double vessel_delta_max) const;
};

ManeuverKind maneuver_kind_from_string(const std::string& s);
std::string to_string(ManeuverKind kind);

/// Stateless zigzag switching rule: keep the current side until the heading
/// deviation from psi_ref crosses +-psi_switch, then commit to the other side.
ControlInput zigzag_controller(double psi, double psi_ref, double current_delta,
                               const ManeuverSpec& spec);

/// Piecewise-constant random steering (and impeller) sequence for a rollout
/// of `steps` control intervals.
std::vector<ControlInput> random_steering_sequence(const ManeuverSpec& spec, double dt,
                                                   std::size_t steps);

/// Per-step control source used by rollouts and the truth simulator.
/// Stateful: zigzag tracks its current side, random tracks segment draws.
class ManeuverController {
 public:
  virtual ~ManeuverController() = default;
  virtual ControlInput next(double t, double psi) = 0;
};

std::unique_ptr<ManeuverController> make_controller(const ManeuverSpec& spec,
                                                    double initial_psi);

/// Replays a prerecorded control sequence; used when evaluating models
/// against a logged trial.
class ReplayController : public ManeuverController {
 public:
  explicit ReplayController(std::vector<ControlInput> seq) : seq_(std::move(seq)) {}
  ControlInput next(double, double) override {
    const ControlInput c = seq_[std::min(pos_, seq_.size() - 1)];
    ++pos_;
    return c;
  }

 private:
  std::vector<ControlInput> seq_;
  std::size_t pos_{0};
};

}  // namespace greyhelm
