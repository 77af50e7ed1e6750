#include "greyhelm/ffn.hpp"

#include <cmath>
#include <stdexcept>

#include "greyhelm/rng.hpp"

namespace greyhelm {

std::array<double, 2> trig_features(double psi) {
  if (!std::isfinite(psi)) throw std::invalid_argument("trig_features: non-finite psi");
  return {std::cos(psi), std::sin(psi)};
}

FfnWeights FfnWeights::zeros(int hidden) {
  FfnWeights w;
  w.w1 = Eigen::MatrixXd::Zero(kFeatureDim, hidden);
  w.b1 = Eigen::VectorXd::Zero(hidden);
  w.w2 = Eigen::MatrixXd::Zero(hidden, hidden);
  w.b2 = Eigen::VectorXd::Zero(hidden);
  w.w3 = Eigen::MatrixXd::Zero(hidden, kOutputDim);
  w.b3 = Eigen::VectorXd::Zero(kOutputDim);
  return w;
}

FfnWeights FfnWeights::seeded_init(int hidden, std::uint64_t seed) {
  FfnWeights w = zeros(hidden);
  Rng rng(seed);
  const double s1 = 1.0 / std::sqrt(static_cast<double>(kFeatureDim));
  for (Eigen::Index i = 0; i < w.w1.rows(); ++i)
    for (Eigen::Index j = 0; j < w.w1.cols(); ++j) w.w1(i, j) = rng.uniform(-s1, s1);
  const double s2 = 1.0 / std::sqrt(static_cast<double>(hidden));
  for (Eigen::Index i = 0; i < w.w2.rows(); ++i)
    for (Eigen::Index j = 0; j < w.w2.cols(); ++j) w.w2(i, j) = rng.uniform(-s2, s2);
  // output layer stays zero: training starts exactly at the base model
  return w;
}

void FfnWeights::validate() const {
  const int h = hidden();
  const bool ok = w1.rows() == kFeatureDim && w1.cols() == h && b1.size() == h &&
                  w2.rows() == h && w2.cols() == h && b2.size() == h && w3.rows() == h &&
                  w3.cols() == kOutputDim && b3.size() == kOutputDim;
  if (!ok) throw std::invalid_argument("FfnWeights: inconsistent shapes");
  const bool finite = w1.allFinite() && b1.allFinite() && w2.allFinite() &&
                      b2.allFinite() && w3.allFinite() && b3.allFinite();
  if (!finite) throw std::invalid_argument("FfnWeights: non-finite entries");
}

OutputArray ffn_forward(const FfnWeights& w, const FeatureArray& x) {
  const Eigen::VectorXd a1 = (w.w1.transpose() * x + w.b1).array().tanh();
  const Eigen::VectorXd a2 = (w.w2.transpose() * a1 + w.b2).array().tanh();
  return w.w3.transpose() * a2 + w.b3;
}

OutputArray ffn_apply(const FfnWeights& w, const FeatureScaler& scaler,
                      const FeatureVector& feature) {
  const OutputArray g = ffn_forward(w, scaler.standardize(feature.as_vector()));
  return g.cwiseProduct(scaler.target_scale);
}

}  // namespace greyhelm
