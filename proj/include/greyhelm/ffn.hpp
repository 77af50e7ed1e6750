#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>

#include "greyhelm/types.hpp"

namespace greyhelm {

inline constexpr int kFeatureDim = 6;
inline constexpr int kOutputDim = 3;

using FeatureArray = Eigen::Matrix<double, kFeatureDim, 1>;
using OutputArray = Eigen::Matrix<double, kOutputDim, 1>;

/// Heading features: [cos(psi), sin(psi)].
std::array<double, 2> trig_features(double psi);

/// Parameters of the three-layer feed-forward network
/// y = tanh(tanh(x W1 + b1) W2 + b2) W3 + b3.
struct FfnWeights {
  Eigen::MatrixXd w1;  // kFeatureDim x h
  Eigen::VectorXd b1;  // h
  Eigen::MatrixXd w2;  // h x h
  Eigen::VectorXd b2;  // h
  Eigen::MatrixXd w3;  // h x kOutputDim
  Eigen::VectorXd b3;  // kOutputDim

  int hidden() const { return static_cast<int>(b1.size()); }

  static FfnWeights zeros(int hidden = 10);

  /// Hidden layers uniform(-1/sqrt(fan_in), +1/sqrt(fan_in)); output layer
  /// zero so an untrained network starts exactly at the base model.
  static FfnWeights seeded_init(int hidden, std::uint64_t seed);

  void validate() const;

  double squared_frobenius() const {
    return w1.squaredNorm() + w2.squaredNorm() + w3.squaredNorm();
  }
};

/// Network inputs: one-step base-model velocities (prime units), the steering
/// command and the heading features.
struct FeatureVector {
  double u_phy{0.0};
  double v_phy{0.0};
  double r_phy{0.0};
  double delta{0.0};
  double cos_psi{1.0};
  double sin_psi{0.0};

  FeatureArray as_vector() const {
    FeatureArray x;
    x << u_phy, v_phy, r_phy, delta, cos_psi, sin_psi;
    return x;
  }
};

/// Per-channel input standardization and output scaling learned from the
/// training set. Features are clipped to +-clip after standardization so the
/// network never extrapolates far outside its training support. Output
/// scaling has no offset: zero network output stays exactly zero.
struct FeatureScaler {
  FeatureArray mean = FeatureArray::Zero();
  FeatureArray std = FeatureArray::Ones();
  OutputArray target_scale = OutputArray::Ones();
  double clip{3.0};

  static FeatureScaler identity() { return {}; }

  FeatureArray standardize(const FeatureArray& x) const {
    FeatureArray z = (x - mean).cwiseQuotient(std);
    return z.cwiseMax(-clip).cwiseMin(clip);
  }
};

/// Raw network evaluation on an already-standardized input.
OutputArray ffn_forward(const FfnWeights& w, const FeatureArray& x);

/// Standardize, evaluate, scale: the network's contribution in target units.
OutputArray ffn_apply(const FfnWeights& w, const FeatureScaler& scaler,
                      const FeatureVector& feature);

}  // namespace greyhelm
