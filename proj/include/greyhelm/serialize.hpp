#pragma once

#include <optional>
#include <string>

#include "greyhelm/config.hpp"
#include "greyhelm/ffn.hpp"
#include "greyhelm/trial_log.hpp"
#include "greyhelm/types.hpp"

namespace greyhelm {

inline constexpr const char* kToolVersion = "0.1.0";

/// Identified coefficients, trained networks and the provenance needed to
/// reuse them: the on-disk product of `identify` and `train`.
struct ModelBundle {
  std::optional<SurgeCoeffs> surge;
  std::optional<SwayYawCoeffs> swayyaw;
  std::optional<FfnWeights> weights;          // hybrid residual network
  std::optional<FeatureScaler> scaler;
  std::optional<FfnWeights> dd_weights;       // pure data-driven baseline
  std::optional<FeatureScaler> dd_scaler;
  std::string config_hash;
  std::uint64_t seed{0};
  std::string method;          // identification method tag
  double ident_lambda{0.0};    // ridge strength used by identify
  double train_lambda{0.0};    // regularizer used by train
  std::string version{kToolVersion};

  bool has_physical() const { return surge.has_value() && swayyaw.has_value(); }
  void validate() const;
};

/// Trial-log CSV: `# key=value` metadata lines, a `t,x,y,psi,u,v,r,delta,n`
/// header, then one row per sample. Doubles are written shortest-round-trip
/// so rewriting a parsed file is byte-stable.
void write_trial_csv(const TrialLog& log, const std::string& path);
TrialLog read_trial_csv(const std::string& path);

std::string format_double(double value);

void write_model_bundle(const ModelBundle& bundle, const std::string& path);
ModelBundle read_model_bundle(const std::string& path);

/// Serialize a bundle to its JSON text (exposed for tests).
std::string model_bundle_json(const ModelBundle& bundle);

}  // namespace greyhelm
