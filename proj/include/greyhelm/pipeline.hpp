#pragma once

#include <map>
#include <string>
#include <vector>

#include "greyhelm/config.hpp"
#include "greyhelm/metrics.hpp"
#include "greyhelm/serialize.hpp"
#include "greyhelm/synth.hpp"

namespace greyhelm {

/// Names and file paths of one generated dataset as recorded in the manifest.
struct ManifestEntry {
  std::string name;
  std::string file;
  std::string split;  // "train" | "test"
  std::string kind;
  std::uint64_t seed{0};
};

struct GenResult {
  std::vector<ManifestEntry> entries;
  std::string manifest_path;
};

/// Per-model evaluation of one test maneuver.
struct ModelReport {
  ChannelRmse rmse;
  bool diverged{false};
  std::size_t steps_completed{0};
  std::optional<double> turning_diameter;
  std::optional<double> diameter_rel_error;
};

struct ManeuverReport {
  std::string name;
  std::string kind;
  std::optional<double> truth_diameter;
  std::map<std::string, ModelReport> models;  // "physical" | "hybrid" | "datadriven"
};

struct EvalReport {
  std::string config_hash;
  std::uint64_t seed{0};
  std::vector<ManeuverReport> maneuvers;
  std::map<std::string, double> total_rmse;
};

/// `gen`: simulate the standard dataset, write one CSV per maneuver plus a
/// JSON manifest into cfg.out_dir.
GenResult cmd_gen(const RunConfig& cfg);

/// `identify`: estimate the physical coefficients from the train logs and
/// write <out>/bundle.json (surge + sway/yaw part).
ModelBundle cmd_identify(const RunConfig& cfg, const std::vector<TrialLog>& train_logs);

/// `train`: fit the hybrid residual network and the pure data-driven
/// baseline on the train logs; extends the bundle.
ModelBundle cmd_train(const RunConfig& cfg, ModelBundle bundle,
                      const std::vector<TrialLog>& train_logs);

/// `evaluate`: closed-loop replay of every test log with the physical,
/// hybrid and data-driven models; writes report.json, per-model trajectory
/// CSVs and prints the summary tables. Refuses a bundle whose config hash
/// differs from cfg unless `force`.
EvalReport cmd_evaluate(const RunConfig& cfg, const ModelBundle& bundle,
                        const std::vector<NamedTrial>& test_trials, bool force = false);

/// Load the train/test logs recorded in a manifest.
std::vector<TrialLog> load_split_logs(const std::string& manifest_path,
                                      const std::string& split);
std::vector<NamedTrial> load_split_trials(const RunConfig& cfg,
                                          const std::string& manifest_path,
                                          const std::string& split);

std::string eval_report_json(const EvalReport& report);
void write_eval_report(const EvalReport& report, const std::string& path);

}  // namespace greyhelm
