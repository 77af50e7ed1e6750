#pragma once

#include <cstdint>
#include <vector>

#include "greyhelm/hybrid.hpp"
#include "greyhelm/trial_log.hpp"

namespace greyhelm {

struct TrainConfig {
  double learning_rate{1e-3};
  int iterations{800};
  bool iterations_are_epochs{false};  // false: mini-batch steps
  int batch_size{64};
  double lambda{0.01};
  std::uint64_t seed{7};
  double beta1{0.9};
  double beta2{0.999};
  double epsilon{1e-8};
  int hidden{10};

  void validate() const;
};

struct TrainResult {
  FfnWeights weights;
  FeatureScaler scaler;
  std::vector<double> loss_trace;  // one entry per optimizer step
};

/// Feature mean/std and residual scale estimated from the samples. The
/// residual scale keeps no offset so the residual identity is preserved.
FeatureScaler fit_scaler(std::span<const TrainingSample> samples);

/// Teacher-forced hybrid training pairs from measured logs: features from the
/// measured state at step k, target the measured prime velocities at k+1.
std::vector<TrainingSample> build_hybrid_training_set(
    const std::vector<TrialLog>& logs, const VesselParams& params,
    Integrator method = Integrator::kEuler);

/// Training pairs for the pure data-driven baseline: raw prime state features
/// and finite-difference prime acceleration targets, zero base.
std::vector<TrainingSample> build_datadriven_training_set(
    const std::vector<TrialLog>& logs, const NondimScheme& scheme);

/// Adam on the structural-risk loss, mini-batches drawn by seeded shuffle
/// with wrap-around. Aborts with std::runtime_error on a non-finite loss.
TrainResult train(const std::vector<TrainingSample>& dataset, const TrainConfig& cfg);

}  // namespace greyhelm
