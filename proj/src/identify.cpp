#include "greyhelm/identify.hpp"

#include <Eigen/QR>
#include <cmath>
#include <stdexcept>

#include "greyhelm/physics.hpp"

namespace greyhelm {

namespace {

// Centered moving average with edge clamping; window must be odd.
std::vector<double> moving_average(const std::vector<double>& s, int window) {
  if (window <= 1) return s;
  if (window % 2 == 0)
    throw std::invalid_argument("prefilter window must be odd");
  const int n = static_cast<int>(s.size());
  const int half = window / 2;
  std::vector<double> out(s.size());
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int k = -half; k <= half; ++k) {
      acc += s[std::clamp(i + k, 0, n - 1)];
    }
    out[i] = acc / window;
  }
  return out;
}

std::vector<double> derivative(const std::vector<double>& s, double dt) {
  const std::size_t n = s.size();
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0) {
      d[i] = (s[1] - s[0]) / dt;
    } else if (i == n - 1) {
      d[i] = (s[n - 1] - s[n - 2]) / dt;
    } else if (i < 2 || i + 2 >= n) {
      d[i] = (s[i + 1] - s[i - 1]) / (2.0 * dt);
    } else {
      // five-point central: fourth-order accurate, needed to keep the
      // differentiation bias below the coefficient-recovery tolerances;
      // grouped as differences so constant series give exactly zero
      d[i] = (8.0 * (s[i + 1] - s[i - 1]) - (s[i + 2] - s[i - 2])) / (12.0 * dt);
    }
  }
  return d;
}

struct PrimeSeries {
  std::vector<double> u, v, r, delta, n;
  std::vector<double> du, dv, dr;  // prime accelerations
};

PrimeSeries prime_series(const TrialLog& log, const NondimScheme& scheme,
                         int prefilter_window) {
  if (log.size() < 3)
    throw std::invalid_argument("identification needs at least 3 samples");
  const std::size_t n = log.size();
  PrimeSeries ps;
  ps.u.reserve(n);
  ps.v.reserve(n);
  ps.r.reserve(n);
  ps.delta.reserve(n);
  ps.n.reserve(n);
  for (const LogRow& row : log.rows) {
    ps.u.push_back(row.u);
    ps.v.push_back(row.v);
    ps.r.push_back(row.r);
    ps.delta.push_back(row.delta);
    ps.n.push_back(row.n);
  }
  ps.u = moving_average(ps.u, prefilter_window);
  ps.v = moving_average(ps.v, prefilter_window);
  ps.r = moving_average(ps.r, prefilter_window);

  const double U = scheme.u_ref, L = scheme.length;
  ps.du = derivative(ps.u, log.dt);
  ps.dv = derivative(ps.v, log.dt);
  ps.dr = derivative(ps.r, log.dt);
  for (std::size_t i = 0; i < n; ++i) {
    ps.u[i] /= U;
    ps.v[i] /= U;
    ps.r[i] *= L / U;
    ps.du[i] *= L / (U * U);
    ps.dv[i] *= L / (U * U);
    ps.dr[i] *= L * L / (U * U);
  }
  return ps;
}

}  // namespace

AccelSeries differentiate_log(const TrialLog& log) {
  if (log.size() < 3)
    throw std::invalid_argument("differentiate_log: need at least 3 samples");
  std::vector<double> u, v, r;
  u.reserve(log.size());
  v.reserve(log.size());
  r.reserve(log.size());
  for (const LogRow& row : log.rows) {
    u.push_back(row.u);
    v.push_back(row.v);
    r.push_back(row.r);
  }
  return {derivative(u, log.dt), derivative(v, log.dt), derivative(r, log.dt)};
}

std::vector<std::size_t> usable_sample_indices(const TrialLog& log) {
  std::vector<std::size_t> idx;
  if (log.size() < 5) return idx;
  for (std::size_t i = 2; i + 2 < log.size(); ++i) {
    bool constant_controls = true;
    for (std::size_t k = i - 2; k <= i + 2; ++k) {
      if (log.rows[k].delta != log.rows[i].delta || log.rows[k].n != log.rows[i].n) {
        constant_controls = false;
        break;
      }
    }
    // the acceleration is discontinuous where the control steps; rows whose
    // stencil straddles a step would pair states with the wrong targets
    if (constant_controls) idx.push_back(i);
  }
  return idx;
}

RegressionProblem build_sway_regressors(const TrialLog& log, const NondimScheme& scheme,
                                        int prefilter_window) {
  if (log.size() == 0) throw std::invalid_argument("build_sway_regressors: empty log");
  const PrimeSeries ps = prime_series(log, scheme, prefilter_window);
  const auto idx = usable_sample_indices(log);
  RegressionProblem p;
  p.term_names = {"Y_v", "Y_r", "Y_delta", "Y_rrr", "Y_vrdelta", "Y_ur", "Y_0"};
  p.design.resize(static_cast<Eigen::Index>(idx.size()), SwayYawCoeffs::kSwayTerms);
  p.targets.resize(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t row = 0; row < idx.size(); ++row) {
    const std::size_t i = idx[row];
    const double u = ps.u[i], v = ps.v[i], r = ps.r[i], d = ps.delta[i];
    p.design.row(static_cast<Eigen::Index>(row)) << v, r, d, r * r * r, v * r * d, u * r,
        1.0;
    p.targets(static_cast<Eigen::Index>(row)) = ps.dv[i];
  }
  return p;
}

RegressionProblem build_yaw_regressors(const TrialLog& log, const NondimScheme& scheme,
                                       int prefilter_window) {
  if (log.size() == 0) throw std::invalid_argument("build_yaw_regressors: empty log");
  const PrimeSeries ps = prime_series(log, scheme, prefilter_window);
  const auto idx = usable_sample_indices(log);
  RegressionProblem p;
  p.term_names = {"R_r",  "R_delta", "R_rrr",         "R_vrdelta",
                  "R_ur", "R_rdd",   "R_vrr",         "R_0"};
  p.design.resize(static_cast<Eigen::Index>(idx.size()), SwayYawCoeffs::kYawTerms);
  p.targets.resize(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t row = 0; row < idx.size(); ++row) {
    const std::size_t i = idx[row];
    const double u = ps.u[i], v = ps.v[i], r = ps.r[i], d = ps.delta[i];
    p.design.row(static_cast<Eigen::Index>(row)) << r, d, r * r * r, v * r * d, u * r,
        r * d * d, v * r * r, 1.0;
    p.targets(static_cast<Eigen::Index>(row)) = ps.dr[i];
  }
  return p;
}

Eigen::VectorXd fit_ridge(const RegressionProblem& problem, const RidgeConfig& cfg) {
  if (cfg.lambda < 0.0) throw std::invalid_argument("fit_ridge: lambda must be >= 0");
  const Eigen::Index rows = problem.design.rows();
  const Eigen::Index cols = problem.design.cols();
  if (rows == 0) throw std::invalid_argument("fit_ridge: empty problem");
  if (problem.targets.size() != rows)
    throw std::invalid_argument("fit_ridge: design/target size mismatch");

  auto column_name = [&](Eigen::Index j) {
    return j < static_cast<Eigen::Index>(problem.term_names.size())
               ? problem.term_names[static_cast<std::size_t>(j)]
               : "column " + std::to_string(j);
  };
  auto column_sd = [&](Eigen::Index j) {
    const double mean = problem.design.col(j).mean();
    return std::sqrt((problem.design.col(j).array() - mean).square().sum() /
                     static_cast<double>(rows));
  };

  // column scaling (no centering: the constant slot is a model term)
  Eigen::VectorXd scale = Eigen::VectorXd::Ones(cols);
  if (cfg.standardize) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double sd = column_sd(j);
      if (sd > 1e-12) scale(j) = sd;
    }
  }

  // excitation check; the intercept slot (name ending in "_0") is exempt
  for (Eigen::Index j = 0; j < cols; ++j) {
    const std::string name = column_name(j);
    if (name.size() >= 2 && name.compare(name.size() - 2, 2, "_0") == 0) continue;
    if (column_sd(j) / scale(j) < 1e-6)
      throw std::runtime_error("fit_ridge: insufficient excitation in regressor " + name);
  }

  Eigen::MatrixXd scaled = problem.design * scale.cwiseInverse().asDiagonal();

  if (cfg.lambda == 0.0) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
    qr.setThreshold(1e-10);
    if (qr.rank() < cols) {
      std::string collinear;
      const auto perm = qr.colsPermutation().indices();
      for (Eigen::Index k = qr.rank(); k < cols; ++k) {
        if (!collinear.empty()) collinear += ", ";
        collinear += column_name(perm(k));
      }
      throw std::runtime_error(
          "fit_ridge: design is rank-deficient with lambda=0; collinear columns: " +
          collinear);
    }
  }

  // normal equations on the per-sample-normalized objective
  const double inv_n = 1.0 / static_cast<double>(rows);
  Eigen::MatrixXd gram = scaled.transpose() * scaled * inv_n;
  gram.diagonal().array() += cfg.lambda;
  const Eigen::VectorXd rhs = scaled.transpose() * problem.targets * inv_n;
  const Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("fit_ridge: normal equations not positive definite");
  return scale.cwiseInverse().asDiagonal() * llt.solve(rhs);
}

SurgeCoeffs identify_surge(const std::vector<TrialLog>& logs, const VesselParams& known,
                           const RidgeConfig& cfg, double min_u_prime_range) {
  if (logs.empty()) throw std::invalid_argument("identify_surge: no logs");
  std::vector<double> design_u;
  std::vector<double> target;
  const double denom = known.accel_denom();
  const double m_prime = known.mass_prime();
  double u_min = 1e300, u_max = -1e300;
  for (const TrialLog& log : logs) {
    const PrimeSeries ps = prime_series(log, known.nondim, cfg.prefilter_window);
    for (std::size_t i : usable_sample_indices(log)) {
      const double u = ps.u[i];
      u_min = std::min(u_min, u);
      u_max = std::max(u_max, u);
      const double thrust_prime =
          jet_thrust({ps.delta[i], ps.n[i]}, known.jet, known.nondim.rho) /
          known.nondim.force_scale();
      design_u.push_back(u);
      target.push_back(ps.du[i] * denom - thrust_prime - m_prime * ps.v[i] * ps.r[i]);
    }
  }
  if (design_u.empty()) throw std::invalid_argument("identify_surge: no usable samples");
  if (u_max - u_min < min_u_prime_range)
    throw std::runtime_error(
        "identify_surge: insufficient excitation (u' range " +
        std::to_string(u_max - u_min) + " < " + std::to_string(min_u_prime_range) + ")");

  RegressionProblem p;
  p.term_names = {"X_u", "X_uu", "X_uuu"};
  p.design.resize(static_cast<Eigen::Index>(design_u.size()), 3);
  p.targets.resize(static_cast<Eigen::Index>(design_u.size()));
  for (std::size_t i = 0; i < design_u.size(); ++i) {
    const double u = design_u[i];
    p.design.row(static_cast<Eigen::Index>(i)) << u, u * u, u * u * u;
    p.targets(static_cast<Eigen::Index>(i)) = target[i];
  }
  const Eigen::VectorXd c = fit_ridge(p, cfg);
  return {known.surge.x_udot, c(0), c(1), c(2)};
}

SwayYawCoeffs identify_sway_yaw(const std::vector<TrialLog>& logs,
                                const NondimScheme& scheme, const RidgeConfig& cfg) {
  if (logs.empty()) throw std::invalid_argument("identify_sway_yaw: no logs");
  RegressionProblem sway, yaw;
  for (std::size_t k = 0; k < logs.size(); ++k) {
    RegressionProblem s = build_sway_regressors(logs[k], scheme, cfg.prefilter_window);
    RegressionProblem y = build_yaw_regressors(logs[k], scheme, cfg.prefilter_window);
    if (k == 0) {
      sway = std::move(s);
      yaw = std::move(y);
    } else {
      const Eigen::Index so = sway.design.rows(), yo = yaw.design.rows();
      sway.design.conservativeResize(so + s.design.rows(), Eigen::NoChange);
      sway.targets.conservativeResize(so + s.targets.size());
      sway.design.bottomRows(s.design.rows()) = s.design;
      sway.targets.tail(s.targets.size()) = s.targets;
      yaw.design.conservativeResize(yo + y.design.rows(), Eigen::NoChange);
      yaw.targets.conservativeResize(yo + y.targets.size());
      yaw.design.bottomRows(y.design.rows()) = y.design;
      yaw.targets.tail(y.targets.size()) = y.targets;
    }
  }
  const Eigen::VectorXd cs = fit_ridge(sway, cfg);
  const Eigen::VectorXd cy = fit_ridge(yaw, cfg);
  SwayYawCoeffs out;
  out.v_v = cs(0);
  out.v_r = cs(1);
  out.v_delta = cs(2);
  out.v_rrr = cs(3);
  out.v_vrdelta = cs(4);
  out.v_ur = cs(5);
  out.v_0 = cs(6);
  out.r_r = cy(0);
  out.r_delta = cy(1);
  out.r_rrr = cy(2);
  out.r_vrdelta = cy(3);
  out.r_ur = cy(4);
  out.r_rdd = cy(5);
  out.r_vrr = cy(6);
  out.r_0 = cy(7);
  return out;
}

SwayYawCoeffs identify_sway_yaw(const TrialLog& log, const NondimScheme& scheme,
                                const RidgeConfig& cfg) {
  return identify_sway_yaw(std::vector<TrialLog>{log}, scheme, cfg);
}

}  // namespace greyhelm
