#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "greyhelm/config.hpp"
#include "greyhelm/pipeline.hpp"
#include "greyhelm/rollout.hpp"
#include "greyhelm/serialize.hpp"
#include "greyhelm/synth.hpp"

namespace {

using namespace greyhelm;

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("-c,--config", opts.config_path, "config file (TOML-style)");
  cmd->add_option("-o,--out", opts.out_dir, "output directory (overrides config)");
  cmd->add_option("-s,--seed", opts.seed, "global seed (overrides config)");
}

RunConfig resolve_config(const CommonOpts& opts) {
  RunConfig cfg =
      opts.config_path.empty() ? default_run_config() : load_run_config(opts.config_path);
  if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
  if (opts.seed) cfg.seed = *opts.seed;
  cfg.validate();
  return cfg;
}

std::string default_manifest(const RunConfig& cfg) {
  return (std::filesystem::path(cfg.out_dir) / "manifest.json").string();
}

std::string default_bundle(const RunConfig& cfg) {
  return (std::filesystem::path(cfg.out_dir) / "bundle.json").string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grey-box maneuvering model toolchain: synthetic trials, coefficient "
               "identification, residual-network training and rollout evaluation"};
  app.require_subcommand(1);

  CommonOpts gen_opts, id_opts, train_opts, roll_opts, eval_opts;
  std::string id_manifest, train_manifest, train_bundle, eval_manifest, eval_bundle,
      roll_bundle;
  bool eval_force = false;

  CLI::App* gen = app.add_subcommand("gen", "generate the standard trial dataset");
  add_common(gen, gen_opts);

  CLI::App* identify =
      app.add_subcommand("identify", "estimate physical coefficients from train logs");
  add_common(identify, id_opts);
  identify->add_option("--manifest", id_manifest, "manifest of generated logs");

  CLI::App* train_cmd =
      app.add_subcommand("train", "train the residual network and the baseline");
  add_common(train_cmd, train_opts);
  train_cmd->add_option("--manifest", train_manifest, "manifest of generated logs");
  train_cmd->add_option("--bundle", train_bundle, "bundle with identified coefficients");

  CLI::App* roll = app.add_subcommand("rollout", "roll one maneuver with one model");
  add_common(roll, roll_opts);
  std::string roll_model = "physical";
  std::string roll_kind = "turning";
  std::string roll_delta = "25 deg";
  double roll_n = 5000.0;
  double roll_duration = 300.0;
  std::string roll_output = "rollout.csv";
  roll->add_option("--model", roll_model, "physical | hybrid | datadriven | truth");
  roll->add_option("--kind", roll_kind, "turning | zigzag | random");
  roll->add_option("--delta", roll_delta, "steering angle, e.g. '25 deg'");
  roll->add_option("--n", roll_n, "impeller speed, rpm");
  roll->add_option("--duration", roll_duration, "maneuver duration, s");
  roll->add_option("--bundle", roll_bundle, "bundle for identified/trained models");
  roll->add_option("--output", roll_output, "trajectory CSV filename (in out dir)");

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "replay test maneuvers with every model");
  add_common(evaluate, eval_opts);
  evaluate->add_option("--manifest", eval_manifest, "manifest of generated logs");
  evaluate->add_option("--bundle", eval_bundle, "trained model bundle");
  evaluate->add_flag("--force", eval_force, "ignore config-hash mismatch");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const RunConfig cfg = resolve_config(gen_opts);
      const GenResult res = cmd_gen(cfg);
      std::printf("wrote %zu trial logs and %s\n", res.entries.size(),
                  res.manifest_path.c_str());
    } else if (identify->parsed()) {
      const RunConfig cfg = resolve_config(id_opts);
      if (id_manifest.empty()) id_manifest = default_manifest(cfg);
      cmd_identify(cfg, load_split_logs(id_manifest, "train"));
      std::printf("bundle written to %s\n", default_bundle(cfg).c_str());
    } else if (train_cmd->parsed()) {
      const RunConfig cfg = resolve_config(train_opts);
      if (train_manifest.empty()) train_manifest = default_manifest(cfg);
      if (train_bundle.empty()) train_bundle = default_bundle(cfg);
      ModelBundle bundle = read_model_bundle(train_bundle);
      cmd_train(cfg, std::move(bundle), load_split_logs(train_manifest, "train"));
      std::printf("bundle updated: %s\n", default_bundle(cfg).c_str());
    } else if (roll->parsed()) {
      const RunConfig cfg = resolve_config(roll_opts);
      ManeuverSpec spec;
      spec.kind = maneuver_kind_from_string(roll_kind);
      spec.name = "rollout";
      spec.duration = roll_duration;
      spec.n_cmd = roll_n;
      spec.delta_cmd = parse_angle(roll_delta);
      spec.rand_seed = mix_seed(cfg.seed, 0x726f6c6cULL);
      spec.validate(cfg.vessel.delta_max);
      const std::size_t steps =
          static_cast<std::size_t>(std::llround(roll_duration / 0.1));

      Trajectory traj;
      if (roll_model == "truth") {
        const TrialLog log =
            generate_trial(spec, cfg.vessel, cfg.disturbance, roll_duration, cfg.seed);
        traj.dt = log.dt;
        for (const LogRow& r : log.rows) {
          traj.times.push_back(r.t);
          traj.states.push_back({r.u, r.v, r.r});
          traj.poses.push_back({r.x, r.y, r.psi});
          traj.controls.push_back({r.delta, r.n});
        }
      } else {
        VesselParams vessel = cfg.vessel;
        std::optional<ModelBundle> bundle;
        if (!roll_bundle.empty()) {
          bundle = read_model_bundle(roll_bundle);
        } else if (std::filesystem::exists(default_bundle(cfg))) {
          bundle = read_model_bundle(default_bundle(cfg));
        }
        if (bundle && bundle->has_physical()) {
          vessel.surge = *bundle->surge;
          vessel.swayyaw = *bundle->swayyaw;
        }
        VelocityModel model = PhysicalModel{vessel, Integrator::kEuler};
        if (roll_model == "hybrid") {
          if (!bundle || !bundle->weights)
            throw std::runtime_error("hybrid rollout needs a trained bundle");
          model = HybridModel{vessel, *bundle->weights, *bundle->scaler,
                              Integrator::kEuler};
        } else if (roll_model == "datadriven") {
          if (!bundle || !bundle->dd_weights)
            throw std::runtime_error("datadriven rollout needs a trained bundle");
          model = DataDrivenModel{*bundle->dd_weights, *bundle->dd_scaler, vessel.nondim};
        } else if (roll_model != "physical") {
          throw std::runtime_error("unknown model: " + roll_model);
        }
        traj = rollout(model, MotionState{}, Pose{}, spec, 0.1, steps);
      }

      TrialLog out_log;
      out_log.dt = traj.dt;
      out_log.meta["config_hash"] = config_hash(cfg);
      out_log.meta["model"] = roll_model;
      if (traj.diverged)
        out_log.meta["diverged_at_step"] = std::to_string(traj.divergence_step);
      for (std::size_t i = 0; i < traj.size(); ++i)
        out_log.rows.push_back({traj.times[i], traj.poses[i].x, traj.poses[i].y,
                                traj.poses[i].psi, traj.states[i].u, traj.states[i].v,
                                traj.states[i].r, traj.controls[i].delta,
                                traj.controls[i].n});
      std::filesystem::create_directories(cfg.out_dir);
      const std::string path =
          (std::filesystem::path(cfg.out_dir) / roll_output).string();
      write_trial_csv(out_log, path);
      std::printf("trajectory written to %s%s\n", path.c_str(),
                  traj.diverged ? " (diverged, truncated)" : "");
    } else if (evaluate->parsed()) {
      const RunConfig cfg = resolve_config(eval_opts);
      if (eval_manifest.empty()) eval_manifest = default_manifest(cfg);
      if (eval_bundle.empty()) eval_bundle = default_bundle(cfg);
      const ModelBundle bundle = read_model_bundle(eval_bundle);
      const auto trials = load_split_trials(cfg, eval_manifest, "test");
      cmd_evaluate(cfg, bundle, trials, eval_force);
      std::printf("\nreport written to %s\n",
                  (std::filesystem::path(cfg.out_dir) / "report.json").string().c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
