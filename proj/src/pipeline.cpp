#include "greyhelm/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "greyhelm/identify.hpp"
#include "greyhelm/rollout.hpp"
#include "greyhelm/train.hpp"

namespace greyhelm {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " +
                                   ec.message());
}

std::string join(const std::string& dir, const std::string& file) {
  return (fs::path(dir) / file).string();
}

}  // namespace

GenResult cmd_gen(const RunConfig& cfg) {
  cfg.validate();
  ensure_out_dir(cfg.out_dir);
  const std::string hash = config_hash(cfg);
  const TrialSet set = standard_dataset(cfg.vessel, cfg.disturbance, cfg.seed, cfg.dataset);

  GenResult result;
  auto emit = [&](const NamedTrial& trial) {
    TrialLog log = trial.log;
    log.meta["name"] = trial.spec.name;
    log.meta["kind"] = to_string(trial.spec.kind);
    log.meta["split"] = trial.is_train ? "train" : "test";
    log.meta["seed"] = std::to_string(trial.seed);
    log.meta["config_hash"] = hash;
    log.meta["drift_model"] = "constant-current+sinusoidal-wave+heading-drift";
    const std::string file = trial.spec.name + ".csv";
    write_trial_csv(log, join(cfg.out_dir, file));
    result.entries.push_back({trial.spec.name, file, trial.is_train ? "train" : "test",
                              to_string(trial.spec.kind), trial.seed});
  };
  for (const NamedTrial& t : set.train) emit(t);
  for (const NamedTrial& t : set.test) emit(t);

  ordered_json manifest;
  manifest["version"] = kToolVersion;
  manifest["config_hash"] = hash;
  manifest["seed"] = cfg.seed;
  manifest["runs"] = ordered_json::array();
  for (const ManifestEntry& e : result.entries) {
    manifest["runs"].push_back({{"name", e.name},
                                {"file", e.file},
                                {"split", e.split},
                                {"kind", e.kind},
                                {"seed", e.seed}});
  }
  result.manifest_path = join(cfg.out_dir, "manifest.json");
  std::ofstream out(result.manifest_path);
  if (!out) throw std::runtime_error("cannot write " + result.manifest_path);
  out << manifest.dump(2) << "\n";
  return result;
}

std::vector<TrialLog> load_split_logs(const std::string& manifest_path,
                                      const std::string& split) {
  std::ifstream in(manifest_path);
  if (!in) throw std::runtime_error("cannot open manifest " + manifest_path);
  ordered_json manifest;
  in >> manifest;
  std::vector<TrialLog> logs;
  const fs::path dir = fs::path(manifest_path).parent_path();
  for (const auto& run : manifest.at("runs")) {
    if (run.at("split").get<std::string>() != split) continue;
    logs.push_back(read_trial_csv((dir / run.at("file").get<std::string>()).string()));
  }
  if (logs.empty())
    throw std::runtime_error("manifest has no '" + split + "' runs: " + manifest_path);
  return logs;
}

std::vector<NamedTrial> load_split_trials(const RunConfig& cfg,
                                          const std::string& manifest_path,
                                          const std::string& split) {
  std::ifstream in(manifest_path);
  if (!in) throw std::runtime_error("cannot open manifest " + manifest_path);
  ordered_json manifest;
  in >> manifest;

  const auto train_specs = standard_train_specs(cfg.dataset);
  const auto test_specs = standard_test_specs(cfg.dataset);
  auto find_spec = [&](const std::string& name) {
    for (const auto& s : train_specs)
      if (s.name == name) return s;
    for (const auto& s : test_specs)
      if (s.name == name) return s;
    throw std::runtime_error("manifest run '" + name + "' is not a standard maneuver");
  };

  std::vector<NamedTrial> out;
  const fs::path dir = fs::path(manifest_path).parent_path();
  for (const auto& run : manifest.at("runs")) {
    if (run.at("split").get<std::string>() != split) continue;
    NamedTrial t;
    t.spec = find_spec(run.at("name").get<std::string>());
    t.log = read_trial_csv((dir / run.at("file").get<std::string>()).string());
    t.seed = run.at("seed").get<std::uint64_t>();
    t.is_train = split == "train";
    out.push_back(std::move(t));
  }
  if (out.empty())
    throw std::runtime_error("manifest has no '" + split + "' runs: " + manifest_path);
  return out;
}

ModelBundle cmd_identify(const RunConfig& cfg, const std::vector<TrialLog>& train_logs) {
  cfg.validate();
  ensure_out_dir(cfg.out_dir);

  ModelBundle bundle;
  bundle.config_hash = config_hash(cfg);
  bundle.seed = cfg.seed;
  bundle.method = "ridge";
  bundle.ident_lambda = cfg.ident.lambda;

  // known quantities are taken from the configured vessel; hydrodynamic
  // coefficients come from the data
  bundle.surge = identify_surge(train_logs, cfg.vessel, cfg.ident);
  bundle.swayyaw = identify_sway_yaw(train_logs, cfg.vessel.nondim, cfg.ident);

  write_model_bundle(bundle, join(cfg.out_dir, "bundle.json"));

  // side-by-side report against the configured (generator) coefficients,
  // both on stdout and as coefficients.json
  ordered_json coeffs;
  coeffs["version"] = kToolVersion;
  coeffs["config_hash"] = bundle.config_hash;
  coeffs["method"] = bundle.method;
  coeffs["lambda"] = cfg.ident.lambda;
  coeffs["estimated"] = ordered_json::object();
  coeffs["reference"] = ordered_json::object();
  coeffs["relative_error"] = ordered_json::object();
  const auto record = [&](const char* name, double est, double ref) {
    coeffs["estimated"][name] = est;
    coeffs["reference"][name] = ref;
    if (ref != 0.0) coeffs["relative_error"][name] = std::abs((est - ref) / ref);
  };
  const auto print_row = [&](const char* name, double est, double ref) {
    record(name, est, ref);
    const double rel = ref != 0.0 ? std::abs((est - ref) / ref) : 0.0;
    std::printf("  %-10s %12.5f %12.5f %8.2f%%\n", name, est, ref, 100.0 * rel);
  };
  std::printf("identified coefficients (estimate / configured / rel. diff):\n");
  print_row("X_u", bundle.surge->x_u, cfg.vessel.surge.x_u);
  print_row("X_uu", bundle.surge->x_uu, cfg.vessel.surge.x_uu);
  print_row("X_uuu", bundle.surge->x_uuu, cfg.vessel.surge.x_uuu);
  const SwayYawCoeffs& est = *bundle.swayyaw;
  const SwayYawCoeffs& ref = cfg.vessel.swayyaw;
  print_row("Y_v", est.v_v, ref.v_v);
  print_row("Y_r", est.v_r, ref.v_r);
  print_row("Y_delta", est.v_delta, ref.v_delta);
  print_row("Y_rrr", est.v_rrr, ref.v_rrr);
  print_row("Y_vrdelta", est.v_vrdelta, ref.v_vrdelta);
  print_row("Y_ur", est.v_ur, ref.v_ur);
  print_row("Y_0", est.v_0, ref.v_0);
  print_row("R_r", est.r_r, ref.r_r);
  print_row("R_delta", est.r_delta, ref.r_delta);
  print_row("R_rrr", est.r_rrr, ref.r_rrr);
  print_row("R_vrdelta", est.r_vrdelta, ref.r_vrdelta);
  print_row("R_ur", est.r_ur, ref.r_ur);
  print_row("R_rdd", est.r_rdd, ref.r_rdd);
  print_row("R_vrr", est.r_vrr, ref.r_vrr);
  print_row("R_0", est.r_0, ref.r_0);

  std::ofstream coeff_out(join(cfg.out_dir, "coefficients.json"));
  if (!coeff_out) throw std::runtime_error("cannot write coefficients.json");
  coeff_out << coeffs.dump(2) << "\n";
  return bundle;
}

ModelBundle cmd_train(const RunConfig& cfg, ModelBundle bundle,
                      const std::vector<TrialLog>& train_logs) {
  cfg.validate();
  if (!bundle.has_physical())
    throw std::runtime_error("cmd_train: bundle has no identified physical model");
  ensure_out_dir(cfg.out_dir);

  VesselParams identified = cfg.vessel;
  identified.surge = *bundle.surge;
  identified.swayyaw = *bundle.swayyaw;
  identified.validate();

  bundle.train_lambda = cfg.train.lambda;
  TrainConfig tc = cfg.train;
  tc.seed = mix_seed(cfg.seed, 0x74726169ULL) ^ cfg.train.seed;

  const auto hybrid_set = build_hybrid_training_set(train_logs, identified);
  TrainResult hybrid = train(hybrid_set, tc);
  bundle.weights = std::move(hybrid.weights);
  bundle.scaler = hybrid.scaler;

  TrainConfig dc = tc;
  dc.seed = mix_seed(cfg.seed, 0x64647472ULL) ^ cfg.train.seed;
  const auto dd_set = build_datadriven_training_set(train_logs, cfg.vessel.nondim);
  TrainResult dd = train(dd_set, dc);
  bundle.dd_weights = std::move(dd.weights);
  bundle.dd_scaler = dd.scaler;

  write_model_bundle(bundle, join(cfg.out_dir, "bundle.json"));

  {
    std::ofstream out(join(cfg.out_dir, "loss_trace.csv"));
    if (!out) throw std::runtime_error("cannot write loss trace");
    out << "step,hybrid_loss,datadriven_loss\n";
    for (std::size_t i = 0; i < hybrid.loss_trace.size(); ++i) {
      out << (i + 1) << ',' << format_double(hybrid.loss_trace[i]) << ','
          << (i < dd.loss_trace.size() ? format_double(dd.loss_trace[i]) : "") << "\n";
    }
  }
  std::printf("training done: hybrid loss %.6f -> %.6f, datadriven loss %.6f -> %.6f\n",
              hybrid.loss_trace.front(), hybrid.loss_trace.back(),
              dd.loss_trace.front(), dd.loss_trace.back());
  return bundle;
}

namespace {

void write_trajectory_csv(const Trajectory& traj, const std::string& path,
                          const std::string& hash) {
  TrialLog as_log;
  as_log.dt = traj.dt;
  as_log.meta["config_hash"] = hash;
  if (traj.diverged) as_log.meta["diverged_at_step"] = std::to_string(traj.divergence_step);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    as_log.rows.push_back({traj.times[i], traj.poses[i].x, traj.poses[i].y,
                           traj.poses[i].psi, traj.states[i].u, traj.states[i].v,
                           traj.states[i].r, traj.controls[i].delta, traj.controls[i].n});
  }
  write_trial_csv(as_log, path);
}

ordered_json model_report_json(const ModelReport& m) {
  ordered_json j;
  j["rmse_u"] = m.rmse.u;
  j["rmse_v"] = m.rmse.v;
  j["rmse_r"] = m.rmse.r;
  j["diverged"] = m.diverged;
  j["steps_completed"] = m.steps_completed;
  if (m.turning_diameter) j["turning_diameter_m"] = *m.turning_diameter;
  if (m.diameter_rel_error) j["diameter_rel_error"] = *m.diameter_rel_error;
  return j;
}

}  // namespace

std::string eval_report_json(const EvalReport& report) {
  ordered_json j;
  j["version"] = kToolVersion;
  j["config_hash"] = report.config_hash;
  j["seed"] = report.seed;
  j["maneuvers"] = ordered_json::array();
  for (const ManeuverReport& m : report.maneuvers) {
    ordered_json jm;
    jm["name"] = m.name;
    jm["kind"] = m.kind;
    if (m.truth_diameter) jm["truth_turning_diameter_m"] = *m.truth_diameter;
    ordered_json models;
    for (const auto& [name, rep] : m.models) models[name] = model_report_json(rep);
    jm["models"] = std::move(models);
    j["maneuvers"].push_back(std::move(jm));
  }
  ordered_json totals;
  for (const auto& [name, total] : report.total_rmse) totals[name] = total;
  j["total_rmse"] = std::move(totals);
  return j.dump(2) + "\n";
}

void write_eval_report(const EvalReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << eval_report_json(report);
}

EvalReport cmd_evaluate(const RunConfig& cfg, const ModelBundle& bundle,
                        const std::vector<NamedTrial>& test_trials, bool force) {
  cfg.validate();
  bundle.validate();
  if (!bundle.has_physical())
    throw std::runtime_error("cmd_evaluate: bundle has no identified physical model");
  const std::string hash = config_hash(cfg);
  if (!force && bundle.config_hash != hash)
    throw std::runtime_error("cmd_evaluate: bundle config hash " + bundle.config_hash +
                             " does not match current config " + hash +
                             " (use --force to override)");
  ensure_out_dir(cfg.out_dir);

  VesselParams identified = cfg.vessel;
  identified.surge = *bundle.surge;
  identified.swayyaw = *bundle.swayyaw;

  std::vector<std::pair<std::string, VelocityModel>> models;
  models.emplace_back("physical", PhysicalModel{identified, Integrator::kEuler});
  if (bundle.weights)
    models.emplace_back("hybrid", HybridModel{identified, *bundle.weights,
                                              *bundle.scaler, Integrator::kEuler});
  if (bundle.dd_weights)
    models.emplace_back("datadriven",
                        DataDrivenModel{*bundle.dd_weights, *bundle.dd_scaler,
                                        cfg.vessel.nondim});

  EvalReport report;
  report.config_hash = hash;
  report.seed = cfg.seed;
  for (const auto& [name, model] : models) report.total_rmse[name] = 0.0;

  for (const NamedTrial& trial : test_trials) {
    ManeuverReport mr;
    mr.name = trial.spec.name;
    mr.kind = to_string(trial.spec.kind);
    if (trial.spec.kind == ManeuverKind::kTurning) {
      try {
        mr.truth_diameter = turning_diameter(trial.log);
      } catch (const std::invalid_argument&) {
        // log too short for a steady turn; skip the diameter comparison
      }
    }
    for (const auto& [name, model] : models) {
      Trajectory traj = rollout_against_log(model, trial.log);
      ModelReport rep;
      rep.diverged = traj.diverged;
      rep.steps_completed = traj.size() - 1;
      // compare over the completed portion; a diverged run is judged on what
      // it produced before truncation
      TrialLog clipped = trial.log;
      clipped.rows.resize(traj.size());
      rep.rmse = rmse(traj, clipped);
      if (mr.truth_diameter && !traj.diverged) {
        try {
          rep.turning_diameter = turning_diameter(traj);
          rep.diameter_rel_error =
              std::abs(*rep.turning_diameter - *mr.truth_diameter) / *mr.truth_diameter;
        } catch (const std::invalid_argument&) {
          // no steady turn in the prediction; leave the fields empty
        }
      }
      report.total_rmse[name] += rep.rmse.total();
      write_trajectory_csv(traj, join(cfg.out_dir, "eval_" + trial.spec.name + "_" +
                                                       name + ".csv"),
                           hash);
      mr.models[name] = rep;
    }
    report.maneuvers.push_back(std::move(mr));
  }

  write_eval_report(report, join(cfg.out_dir, "report.json"));

  // console tables, velocities then diameters
  std::printf("\nvelocity RMSE per maneuver:\n%-14s %-12s %10s %10s %10s %s\n", "maneuver",
              "model", "rmse_u", "rmse_v", "rmse_r", "flags");
  for (const ManeuverReport& m : report.maneuvers) {
    for (const auto& [name, rep] : m.models) {
      std::printf("%-14s %-12s %10.4f %10.4f %10.4f %s\n", m.name.c_str(), name.c_str(),
                  rep.rmse.u, rep.rmse.v, rep.rmse.r, rep.diverged ? "diverged" : "");
    }
  }
  std::printf("\nturning diameters:\n%-14s %-12s %12s %12s %10s\n", "maneuver", "model",
              "pred [m]", "truth [m]", "rel err");
  for (const ManeuverReport& m : report.maneuvers) {
    if (!m.truth_diameter) continue;
    for (const auto& [name, rep] : m.models) {
      if (rep.turning_diameter)
        std::printf("%-14s %-12s %12.2f %12.2f %9.2f%%\n", m.name.c_str(), name.c_str(),
                    *rep.turning_diameter, *m.truth_diameter,
                    100.0 * *rep.diameter_rel_error);
      else
        std::printf("%-14s %-12s %12s %12.2f %10s\n", m.name.c_str(), name.c_str(), "-",
                    *m.truth_diameter, "-");
    }
  }
  std::printf("\ntotal RMSE (sum over channels and maneuvers):\n");
  for (const auto& [name, total] : report.total_rmse)
    std::printf("  %-12s %10.4f\n", name.c_str(), total);
  return report;
}

}  // namespace greyhelm
