#pragma once

#include <map>
#include <string>
#include <vector>

#include "greyhelm/types.hpp"

namespace greyhelm {

/// One sample of a recorded (or simulated) free-running trial.
struct LogRow {
  double t{0.0};
  double x{0.0};
  double y{0.0};
  double psi{0.0};
  double u{0.0};
  double v{0.0};
  double r{0.0};
  double delta{0.0};
  double n{0.0};
};

/// Uniformly sampled time series of state, pose and control. The universal
/// data-exchange record of the toolchain; serialized as CSV.
struct TrialLog {
  double dt{0.1};
  std::vector<LogRow> rows;
  std::map<std::string, std::string> meta;

  std::size_t size() const { return rows.size(); }

  /// Checks uniform spacing, finite values and steering range.
  void validate(double delta_max) const;
};

}  // namespace greyhelm
