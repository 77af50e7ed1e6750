#include "greyhelm/hybrid.hpp"

#include <cmath>
#include <stdexcept>

namespace greyhelm {

namespace {

struct PhysicalRhs {
  const VesselParams& params;
  StateDeriv operator()(const MotionState& s, const ControlInput& c) const {
    return physical_rhs(s, c, params);
  }
};

}  // namespace

MotionState physical_step(const VesselParams& params, const MotionState& state,
                          const ControlInput& control, double dt, Integrator method) {
  return integrate_step(method, PhysicalRhs{params}, state, control, dt);
}

FeatureVector hybrid_features(const VesselParams& params, const MotionState& state,
                              double psi, const ControlInput& control, double dt,
                              Integrator method) {
  const MotionState next = physical_step(params, state, control, dt, method);
  const MotionState p = to_prime(next, params.nondim);
  const auto [c, s] = trig_features(psi);
  return {p.u, p.v, p.r, control.delta, c, s};
}

MotionState hybrid_step(const VesselParams& params, const FfnWeights& weights,
                        const FeatureScaler& scaler, const MotionState& state,
                        double psi, const ControlInput& control, double dt,
                        Integrator method) {
  const MotionState base = physical_step(params, state, control, dt, method);
  const MotionState base_prime = to_prime(base, params.nondim);
  const auto [c, s] = trig_features(psi);
  const FeatureVector feature{base_prime.u, base_prime.v, base_prime.r, control.delta, c,
                              s};
  const OutputArray g = ffn_apply(weights, scaler, feature);
  // residual mapped to SI and added there, so zero network output leaves the
  // physical prediction bit-for-bit unchanged
  const NondimScheme& ns = params.nondim;
  return {base.u + g(0) * ns.u_ref, base.v + g(1) * ns.u_ref,
          base.r + g(2) * ns.u_ref / ns.length};
}

MotionState hybrid_predict(const VesselParams& params, const FfnWeights& weights,
                           const FeatureScaler& scaler, const MotionState& state,
                           double psi, const ControlInput& control, double dt,
                           Integrator method) {
  return to_prime(hybrid_step(params, weights, scaler, state, psi, control, dt, method),
                  params.nondim);
}

StateDeriv pure_datadriven_forward(const FfnWeights& weights, const FeatureScaler& scaler,
                                   const MotionState& prime_state, double psi,
                                   const ControlInput& control) {
  const auto [c, s] = trig_features(psi);
  const FeatureVector feature{prime_state.u, prime_state.v, prime_state.r, control.delta,
                              c, s};
  const OutputArray g = ffn_apply(weights, scaler, feature);
  return {g(0), g(1), g(2)};
}

double loss(const FfnWeights& weights, const FeatureScaler& scaler,
            std::span<const TrainingSample> batch, double lambda) {
  if (batch.empty()) throw std::invalid_argument("loss: empty batch");
  double mse = 0.0;
  for (const TrainingSample& sample : batch) {
    const OutputArray g = ffn_forward(weights, scaler.standardize(sample.feature.as_vector()));
    const OutputArray standardized_residual =
        (sample.target - sample.base).cwiseQuotient(scaler.target_scale);
    mse += (g - standardized_residual).squaredNorm();
  }
  mse /= static_cast<double>(batch.size());
  return mse + 0.5 * lambda * weights.squared_frobenius();
}

FfnWeights loss_gradient(const FfnWeights& weights, const FeatureScaler& scaler,
                         std::span<const TrainingSample> batch, double lambda) {
  if (batch.empty()) throw std::invalid_argument("loss_gradient: empty batch");
  FfnWeights grad = FfnWeights::zeros(weights.hidden());
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  for (const TrainingSample& sample : batch) {
    const FeatureArray x = scaler.standardize(sample.feature.as_vector());
    const Eigen::VectorXd a1 = (weights.w1.transpose() * x + weights.b1).array().tanh();
    const Eigen::VectorXd a2 = (weights.w2.transpose() * a1 + weights.b2).array().tanh();
    const OutputArray g = weights.w3.transpose() * a2 + weights.b3;
    const OutputArray standardized_residual =
        (sample.target - sample.base).cwiseQuotient(scaler.target_scale);
    const OutputArray d = 2.0 * inv_n * (g - standardized_residual);

    grad.b3 += d;
    grad.w3 += a2 * d.transpose();
    const Eigen::VectorXd da2 =
        (weights.w3 * d).cwiseProduct((1.0 - a2.array().square()).matrix());
    grad.b2 += da2;
    grad.w2 += a1 * da2.transpose();
    const Eigen::VectorXd da1 =
        (weights.w2 * da2).cwiseProduct((1.0 - a1.array().square()).matrix());
    grad.b1 += da1;
    grad.w1 += x * da1.transpose();
  }
  grad.w1 += lambda * weights.w1;
  grad.w2 += lambda * weights.w2;
  grad.w3 += lambda * weights.w3;
  return grad;
}

}  // namespace greyhelm
