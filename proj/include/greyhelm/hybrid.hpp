#pragma once

#include <span>
#include <vector>

#include "greyhelm/ffn.hpp"
#include "greyhelm/integrate.hpp"
#include "greyhelm/physics.hpp"
#include "greyhelm/types.hpp"

namespace greyhelm {

/// One-step velocity prediction of the physical model, SI units.
MotionState physical_step(const VesselParams& params, const MotionState& state,
                          const ControlInput& control, double dt,
                          Integrator method = Integrator::kEuler);

/// Network inputs for the hybrid model: physical one-step prediction in
/// prime units, steering command, heading features.
FeatureVector hybrid_features(const VesselParams& params, const MotionState& state,
                              double psi, const ControlInput& control, double dt,
                              Integrator method = Integrator::kEuler);

/// Hybrid one-step prediction in SI units: physical one-step plus the
/// network residual mapped back to SI. With all-zero weights this is
/// bit-for-bit the physical one-step prediction.
MotionState hybrid_step(const VesselParams& params, const FfnWeights& weights,
                        const FeatureScaler& scaler, const MotionState& state,
                        double psi, const ControlInput& control, double dt,
                        Integrator method = Integrator::kEuler);

/// As hybrid_step but returning prime-unit velocities.
MotionState hybrid_predict(const VesselParams& params, const FfnWeights& weights,
                           const FeatureScaler& scaler, const MotionState& state,
                           double psi, const ControlInput& control, double dt,
                           Integrator method = Integrator::kEuler);

/// Pure data-driven baseline: the same network topology mapping measured
/// state and heading features directly to prime-unit accelerations.
StateDeriv pure_datadriven_forward(const FfnWeights& weights, const FeatureScaler& scaler,
                                   const MotionState& prime_state, double psi,
                                   const ControlInput& control);

/// One teacher-forced training pair. `base` is the residual connection value
/// (physical one-step in prime units for the hybrid; zero for the pure
/// data-driven baseline) and `target` the measured quantity being predicted.
struct TrainingSample {
  FeatureVector feature;
  OutputArray base = OutputArray::Zero();
  OutputArray target = OutputArray::Zero();
};

/// Mean squared error over the batch in standardized target units plus the
/// Frobenius regularizer on the weight matrices (biases unpenalized):
///   (1/N) sum ||(base + scale*g - target)/scale||^2 + (lambda/2) sum ||W_i||_F^2.
/// Throws on an empty batch.
double loss(const FfnWeights& weights, const FeatureScaler& scaler,
            std::span<const TrainingSample> batch, double lambda);

/// Exact reverse-mode gradient of `loss` with respect to every weight and
/// bias entry. The base term is constant with respect to the weights, so
/// gradients flow only through the network path.
FfnWeights loss_gradient(const FfnWeights& weights, const FeatureScaler& scaler,
                         std::span<const TrainingSample> batch, double lambda);

}  // namespace greyhelm
