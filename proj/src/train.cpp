#include "greyhelm/train.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "greyhelm/identify.hpp"
#include "greyhelm/rng.hpp"

namespace greyhelm {

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw std::invalid_argument("TrainConfig: learning_rate");
  if (iterations <= 0) throw std::invalid_argument("TrainConfig: iterations");
  if (batch_size <= 0) throw std::invalid_argument("TrainConfig: batch_size");
  if (lambda < 0.0) throw std::invalid_argument("TrainConfig: lambda");
  if (hidden <= 0) throw std::invalid_argument("TrainConfig: hidden");
  if (!(beta1 > 0.0 && beta1 < 1.0 && beta2 > 0.0 && beta2 < 1.0))
    throw std::invalid_argument("TrainConfig: betas must be in (0, 1)");
  if (!(epsilon > 0.0)) throw std::invalid_argument("TrainConfig: epsilon");
}

FeatureScaler fit_scaler(std::span<const TrainingSample> samples) {
  if (samples.empty()) throw std::invalid_argument("fit_scaler: no samples");
  FeatureScaler sc;
  const double n = static_cast<double>(samples.size());

  FeatureArray mean = FeatureArray::Zero();
  for (const TrainingSample& s : samples) mean += s.feature.as_vector();
  mean /= n;
  FeatureArray var = FeatureArray::Zero();
  for (const TrainingSample& s : samples) {
    const FeatureArray d = s.feature.as_vector() - mean;
    var += d.cwiseProduct(d);
  }
  var /= n;
  sc.mean = mean;
  sc.std = var.cwiseSqrt().cwiseMax(1e-9);

  OutputArray res_var = OutputArray::Zero();
  OutputArray res_mean = OutputArray::Zero();
  for (const TrainingSample& s : samples) res_mean += s.target - s.base;
  res_mean /= n;
  for (const TrainingSample& s : samples) {
    const OutputArray d = s.target - s.base - res_mean;
    res_var += d.cwiseProduct(d);
  }
  res_var /= n;
  // scale only; the network's bias handles the mean, keeping zero weights an
  // exact identity
  sc.target_scale = res_var.cwiseSqrt().cwiseMax(1e-12);
  return sc;
}

std::vector<TrainingSample> build_hybrid_training_set(const std::vector<TrialLog>& logs,
                                                      const VesselParams& params,
                                                      Integrator method) {
  std::vector<TrainingSample> out;
  for (const TrialLog& log : logs) {
    if (log.size() < 2) continue;
    for (std::size_t k = 0; k + 1 < log.size(); ++k) {
      const LogRow& row = log.rows[k];
      const LogRow& next = log.rows[k + 1];
      const MotionState measured{row.u, row.v, row.r};
      const ControlInput control{row.delta, row.n};
      TrainingSample sample;
      sample.feature =
          hybrid_features(params, measured, row.psi, control, log.dt, method);
      sample.base << sample.feature.u_phy, sample.feature.v_phy, sample.feature.r_phy;
      const MotionState target_prime =
          to_prime({next.u, next.v, next.r}, params.nondim);
      sample.target << target_prime.u, target_prime.v, target_prime.r;
      out.push_back(sample);
    }
  }
  if (out.empty()) throw std::invalid_argument("build_hybrid_training_set: no samples");
  return out;
}

std::vector<TrainingSample> build_datadriven_training_set(
    const std::vector<TrialLog>& logs, const NondimScheme& scheme) {
  std::vector<TrainingSample> out;
  const double time_scale = scheme.time_scale();
  for (const TrialLog& log : logs) {
    const AccelSeries accel = differentiate_log(log);
    for (std::size_t k : usable_sample_indices(log)) {
      const LogRow& row = log.rows[k];
      const MotionState p = to_prime({row.u, row.v, row.r}, scheme);
      const auto [c, s] = trig_features(row.psi);
      TrainingSample sample;
      sample.feature = {p.u, p.v, p.r, row.delta, c, s};
      // prime accelerations (per prime time)
      sample.target << accel.du[k] / scheme.u_ref * time_scale,
          accel.dv[k] / scheme.u_ref * time_scale,
          accel.dr[k] * scheme.length / scheme.u_ref * time_scale;
      out.push_back(sample);
    }
  }
  if (out.empty())
    throw std::invalid_argument("build_datadriven_training_set: no samples");
  return out;
}

TrainResult train(const std::vector<TrainingSample>& dataset, const TrainConfig& cfg) {
  cfg.validate();
  if (dataset.empty()) throw std::invalid_argument("train: empty dataset");

  const FeatureScaler scaler = fit_scaler(dataset);
  FfnWeights w = FfnWeights::seeded_init(cfg.hidden, cfg.seed);
  FfnWeights m = FfnWeights::zeros(cfg.hidden);
  FfnWeights v = FfnWeights::zeros(cfg.hidden);

  const std::size_t n = dataset.size();
  const std::size_t batch = std::min<std::size_t>(static_cast<std::size_t>(cfg.batch_size), n);
  const long steps_per_epoch = static_cast<long>((n + batch - 1) / batch);
  const long total_steps = cfg.iterations_are_epochs
                               ? static_cast<long>(cfg.iterations) * steps_per_epoch
                               : static_cast<long>(cfg.iterations);

  Rng rng(mix_seed(cfg.seed, 0x7261696eULL));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  std::size_t pos = 0;

  std::vector<TrainingSample> batch_buf;
  batch_buf.reserve(batch);
  std::vector<double> trace;
  trace.reserve(static_cast<std::size_t>(total_steps));

  for (long step = 1; step <= total_steps; ++step) {
    batch_buf.clear();
    while (batch_buf.size() < batch) {
      if (pos >= n) {
        rng.shuffle(order);
        pos = 0;
      }
      batch_buf.push_back(dataset[order[pos++]]);
    }

    const double batch_loss = loss(w, scaler, batch_buf, cfg.lambda);
    if (!std::isfinite(batch_loss))
      throw std::runtime_error("train: non-finite loss at step " + std::to_string(step));
    trace.push_back(batch_loss);

    const FfnWeights g = loss_gradient(w, scaler, batch_buf, cfg.lambda);

    const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(step));
    const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(step));
    auto adam = [&](Eigen::MatrixXd& mw, Eigen::MatrixXd& vw, Eigen::MatrixXd& ww,
                    const Eigen::MatrixXd& gw) {
      mw = cfg.beta1 * mw + (1.0 - cfg.beta1) * gw;
      vw = cfg.beta2 * vw + (1.0 - cfg.beta2) * gw.cwiseProduct(gw);
      ww -= cfg.learning_rate *
            (mw / bc1).cwiseQuotient(((vw / bc2).cwiseSqrt().array() + cfg.epsilon).matrix());
    };
    auto adam_v = [&](Eigen::VectorXd& mw, Eigen::VectorXd& vw, Eigen::VectorXd& ww,
                      const Eigen::VectorXd& gw) {
      mw = cfg.beta1 * mw + (1.0 - cfg.beta1) * gw;
      vw = cfg.beta2 * vw + (1.0 - cfg.beta2) * gw.cwiseProduct(gw);
      ww -= cfg.learning_rate *
            (mw / bc1).cwiseQuotient(((vw / bc2).cwiseSqrt().array() + cfg.epsilon).matrix());
    };
    adam(m.w1, v.w1, w.w1, g.w1);
    adam_v(m.b1, v.b1, w.b1, g.b1);
    adam(m.w2, v.w2, w.w2, g.w2);
    adam_v(m.b2, v.b2, w.b2, g.b2);
    adam(m.w3, v.w3, w.w3, g.w3);
    adam_v(m.b3, v.b3, w.b3, g.b3);
  }

  return {std::move(w), scaler, std::move(trace)};
}

}  // namespace greyhelm
