#include "greyhelm/trial_log.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace greyhelm {

void TrialLog::validate(double delta_max) const {
  if (!(dt > 0.0)) throw std::invalid_argument("TrialLog: dt must be positive");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const LogRow& row = rows[i];
    const bool finite = std::isfinite(row.t) && std::isfinite(row.x) &&
                        std::isfinite(row.y) && std::isfinite(row.psi) &&
                        std::isfinite(row.u) && std::isfinite(row.v) &&
                        std::isfinite(row.r) && std::isfinite(row.delta) &&
                        std::isfinite(row.n);
    if (!finite)
      throw std::invalid_argument("TrialLog: non-finite value at row " + std::to_string(i));
    if (std::abs(row.delta) > delta_max + 1e-12)
      throw std::invalid_argument("TrialLog: steering out of range at row " +
                                  std::to_string(i));
    if (i > 0) {
      const double spacing = row.t - rows[i - 1].t;
      if (std::abs(spacing - dt) > 1e-6)
        throw std::invalid_argument("TrialLog: non-uniform sampling at row " +
                                    std::to_string(i));
    }
  }
}

}  // namespace greyhelm
