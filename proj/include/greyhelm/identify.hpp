#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "greyhelm/trial_log.hpp"
#include "greyhelm/types.hpp"

namespace greyhelm {

/// Linear-in-parameters regression problem: one row of monomial regressors
/// per usable log sample, dimensionless acceleration targets.
struct RegressionProblem {
  Eigen::MatrixXd design;
  Eigen::VectorXd targets;
  std::vector<std::string> term_names;
};

struct RidgeConfig {
  double lambda{1e-4};     // regularization strength, >= 0
  bool standardize{true};  // scale columns to unit std before solving
  int prefilter_window{1}; // odd moving-average window on velocities; 1 = off
};

/// Finite-difference accelerations of the logged velocities, SI units,
/// same length as the log. Central differences in the interior (five-point
/// where available, three-point next to the edges), one-sided at the ends.
struct AccelSeries {
  std::vector<double> du, dv, dr;
};
AccelSeries differentiate_log(const TrialLog& log);

/// Indices of samples usable as regression rows: the difference stencil lies
/// inside the log and the controls are constant across it.
std::vector<std::size_t> usable_sample_indices(const TrialLog& log);

RegressionProblem build_sway_regressors(const TrialLog& log, const NondimScheme& scheme,
                                        int prefilter_window = 1);
RegressionProblem build_yaw_regressors(const TrialLog& log, const NondimScheme& scheme,
                                       int prefilter_window = 1);

/// Ridge regression via normal equations with an LLT factorization. The
/// objective is (1/N)||Xc - y||^2 + lambda*||c||^2 so results do not depend
/// on duplicating the data. With lambda == 0 the design must have full
/// column rank; otherwise the error names the collinear columns.
Eigen::VectorXd fit_ridge(const RegressionProblem& problem, const RidgeConfig& cfg);

/// Surge coefficient identification. The added-mass term and jet constants
/// in `known` are taken as given. Requires a surge speed sweep
/// (max u' - min u' >= min_u_prime_range) or throws.
SurgeCoeffs identify_surge(const std::vector<TrialLog>& logs, const VesselParams& known,
                           const RidgeConfig& cfg, double min_u_prime_range = 0.05);

/// Sway and yaw coefficient identification from one maneuver log. The two
/// channels share no coefficients and are fit separately.
SwayYawCoeffs identify_sway_yaw(const TrialLog& log, const NondimScheme& scheme,
                                const RidgeConfig& cfg);

/// As above but pooling rows from several logs.
SwayYawCoeffs identify_sway_yaw(const std::vector<TrialLog>& logs,
                                const NondimScheme& scheme, const RidgeConfig& cfg);

}  // namespace greyhelm
