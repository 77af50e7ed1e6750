#include <doctest.h>

#include <cmath>
#include <limits>

#include "greyhelm/rng.hpp"
#include "greyhelm/synth.hpp"
#include "greyhelm/train.hpp"

using namespace greyhelm;

namespace {

const VesselParams kVessel = reference_vessel();

std::vector<TrialLog> small_disturbed_logs() {
  ManeuverSpec rnd;
  rnd.kind = ManeuverKind::kRandom;
  rnd.name = "rnd";
  rnd.duration = 120.0;
  rnd.n_cmd = 5000.0;
  DisturbanceSpec dist;  // defaults
  return {generate_trial(rnd, kVessel, dist, 120.0, 21)};
}

}  // namespace

TEST_CASE("scaler statistics") {
  std::vector<TrainingSample> samples;
  Rng rng(8);
  for (int i = 0; i < 500; ++i) {
    TrainingSample s;
    s.feature = {2.0 + rng.normal(), rng.normal(), 0.0, 0.0, 1.0, 0.0};
    s.base << 0.0, 0.0, 0.0;
    s.target << 0.1 * rng.normal(), 0.0, 0.0;
    samples.push_back(s);
  }
  const FeatureScaler sc = fit_scaler(samples);
  CHECK(sc.mean(0) == doctest::Approx(2.0).epsilon(0.1));
  CHECK(sc.std(0) == doctest::Approx(1.0).epsilon(0.15));
  CHECK(sc.std(2) == 1e-9);  // floored, constant feature
  CHECK(sc.target_scale(0) == doctest::Approx(0.1).epsilon(0.15));
  CHECK(sc.target_scale(1) == 1e-12);  // floored, constant residual
}

TEST_CASE("hybrid training pairs use measured state and next-step targets") {
  TrialLog log;
  log.dt = 0.1;
  for (int i = 0; i < 5; ++i) {
    const double t = 0.1 * i;
    log.rows.push_back({t, 0.0, 0.0, 0.1 * i, 2.0 + 0.1 * i, 0.05, 0.01, 0.2, 5000.0});
  }
  const auto samples = build_hybrid_training_set({log}, kVessel);
  REQUIRE(samples.size() == 4);
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const TrainingSample& s = samples[k];
    // base is the physical one-step from the measured state, in prime units
    const MotionState base_si = physical_step(
        kVessel, {log.rows[k].u, log.rows[k].v, log.rows[k].r},
        {log.rows[k].delta, log.rows[k].n}, 0.1);
    const MotionState base_prime = to_prime(base_si, kVessel.nondim);
    CHECK(s.base(0) == doctest::Approx(base_prime.u).epsilon(1e-14));
    CHECK(s.feature.u_phy == s.base(0));
    CHECK(s.feature.cos_psi == doctest::Approx(std::cos(log.rows[k].psi)).epsilon(1e-14));
    // target is the next measured sample in prime units
    CHECK(s.target(0) == doctest::Approx(log.rows[k + 1].u / 5.0).epsilon(1e-14));
    CHECK(s.target(2) ==
          doctest::Approx(log.rows[k + 1].r * 7.5 / 5.0).epsilon(1e-14));
  }
}

TEST_CASE("data-driven training pairs carry prime accelerations") {
  // constant-velocity log: all acceleration targets are exactly zero
  TrialLog log;
  log.dt = 0.1;
  for (int i = 0; i < 20; ++i)
    log.rows.push_back({0.1 * i, 0.0, 0.0, 0.3, 2.5, -0.2, 0.04, 0.1, 4000.0});
  const auto samples = build_datadriven_training_set({log}, kVessel.nondim);
  REQUIRE(!samples.empty());
  for (const TrainingSample& s : samples) {
    CHECK(s.base.isZero());
    CHECK(s.target.isZero());
    CHECK(s.feature.u_phy == doctest::Approx(0.5).epsilon(1e-14));  // 2.5 / 5
  }
}

TEST_CASE("training is bitwise reproducible for a fixed seed") {
  const auto logs = small_disturbed_logs();
  const auto dataset = build_hybrid_training_set(logs, kVessel);
  TrainConfig cfg;
  cfg.iterations = 60;
  cfg.seed = 99;
  const TrainResult a = train(dataset, cfg);
  const TrainResult b = train(dataset, cfg);
  CHECK(a.weights.w1 == b.weights.w1);
  CHECK(a.weights.w2 == b.weights.w2);
  CHECK(a.weights.w3 == b.weights.w3);
  CHECK(a.weights.b3 == b.weights.b3);
  CHECK(a.loss_trace == b.loss_trace);

  TrainConfig other = cfg;
  other.seed = 100;
  const TrainResult c = train(dataset, other);
  CHECK(a.weights.w1 != c.weights.w1);
}

TEST_CASE("loss decreases over training on disturbed data") {
  const auto logs = small_disturbed_logs();
  const auto dataset = build_hybrid_training_set(logs, kVessel);
  TrainConfig cfg;
  cfg.iterations = 800;
  const TrainResult r = train(dataset, cfg);
  REQUIRE(r.loss_trace.size() == 800);
  // average the first and last 50 steps: single-batch losses are noisy
  double head = 0.0, tail = 0.0;
  for (int i = 0; i < 50; ++i) {
    head += r.loss_trace[static_cast<std::size_t>(i)];
    tail += r.loss_trace[r.loss_trace.size() - 1 - static_cast<std::size_t>(i)];
  }
  CHECK(tail < head);
}

TEST_CASE("self-consistent targets keep the learned residual near zero") {
  const auto logs = small_disturbed_logs();
  auto dataset = build_hybrid_training_set(logs, kVessel);
  for (TrainingSample& s : dataset) s.target = s.base;  // perfect physical model
  TrainConfig cfg;
  cfg.iterations = 400;
  const TrainResult r = train(dataset, cfg);
  double worst = 0.0;
  for (const TrainingSample& s : dataset) {
    const OutputArray g = ffn_apply(r.weights, r.scaler, s.feature);
    worst = std::max(worst, g.cwiseAbs().maxCoeff());
  }
  // target_scale is floored at 1e-12 for an exactly-zero residual, so any
  // surviving network output is negligible in prime units
  CHECK(worst < 1e-9);
}

TEST_CASE("epoch-mode iteration count") {
  const auto logs = small_disturbed_logs();
  auto dataset = build_hybrid_training_set(logs, kVessel);
  dataset.resize(100);
  TrainConfig cfg;
  cfg.iterations = 3;
  cfg.iterations_are_epochs = true;
  cfg.batch_size = 32;  // 4 steps per epoch
  const TrainResult r = train(dataset, cfg);
  CHECK(r.loss_trace.size() == 12);
}

TEST_CASE("non-finite loss aborts with a diagnostic") {
  const auto logs = small_disturbed_logs();
  auto dataset = build_hybrid_training_set(logs, kVessel);
  dataset[0].target << std::numeric_limits<double>::infinity(), 0.0, 0.0;
  TrainConfig cfg;
  cfg.iterations = 50;
  CHECK_THROWS_WITH_AS(train(dataset, cfg), doctest::Contains("non-finite"),
                       std::runtime_error);
}

TEST_CASE("training config validation") {
  TrainConfig cfg;
  cfg.batch_size = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = TrainConfig{};
  cfg.learning_rate = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
