#pragma once

#include <cstdint>
#include <string>

#include "greyhelm/identify.hpp"
#include "greyhelm/synth.hpp"
#include "greyhelm/train.hpp"
#include "greyhelm/types.hpp"

namespace greyhelm {

/// Everything one experiment run needs, loadable from a single TOML-style
/// document. Unknown keys are rejected so configs stay reproducible.
struct RunConfig {
  VesselParams vessel;
  DisturbanceSpec disturbance;
  RidgeConfig ident;
  TrainConfig train;
  DatasetConfig dataset;
  double velocity_bound_factor{10.0};
  std::string out_dir{"out"};
  std::uint64_t seed{42};

  void validate() const;
};

RunConfig default_run_config();

/// Parse a config document. Accepts `key = value` pairs under [section]
/// headers; values are numbers, booleans, quoted strings, or angle strings
/// with an explicit unit suffix ("25 deg", "0.44 rad"). Unknown keys, bad
/// types and malformed lines raise std::runtime_error with the line number.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

/// Canonical single-string rendering of a config; equal configs render
/// identically. Basis of the config hash embedded in every output file.
std::string canonical_config_string(const RunConfig& cfg);

/// FNV-1a 64-bit hash of the canonical rendering, as fixed-width hex.
std::string config_hash(const RunConfig& cfg);

/// Angle strings: plain numbers are radians; "deg"/"rad" suffixes convert.
double parse_angle(const std::string& text);

}  // namespace greyhelm
