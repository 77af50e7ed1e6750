#include "greyhelm/metrics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace greyhelm {

namespace {

ChannelRmse rmse_series(const std::vector<MotionState>& a,
                        const std::vector<MotionState>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("rmse: length mismatch (" + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()) + ")");
  if (a.empty()) throw std::invalid_argument("rmse: empty series");
  double su = 0.0, sv = 0.0, sr = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double eu = a[i].u - b[i].u;
    const double ev = a[i].v - b[i].v;
    const double er = a[i].r - b[i].r;
    su += eu * eu;
    sv += ev * ev;
    sr += er * er;
  }
  const double n = static_cast<double>(a.size());
  return {std::sqrt(su / n), std::sqrt(sv / n), std::sqrt(sr / n)};
}

}  // namespace

ChannelRmse rmse(const Trajectory& predicted, const Trajectory& truth) {
  return rmse_series(predicted.states, truth.states);
}

ChannelRmse rmse(const Trajectory& predicted, const TrialLog& truth) {
  std::vector<MotionState> t;
  t.reserve(truth.size());
  for (const LogRow& row : truth.rows) t.push_back({row.u, row.v, row.r});
  return rmse_series(predicted.states, t);
}

std::optional<CircleFit> fit_circle_kasa(const std::vector<Pose>& points,
                                         std::size_t first) {
  if (points.size() < first + 3) return std::nullopt;
  // minimize sum (x^2 + y^2 + A x + B y + C)^2 over A, B, C
  Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
  Eigen::Vector3d atb = Eigen::Vector3d::Zero();
  for (std::size_t i = first; i < points.size(); ++i) {
    const Eigen::Vector3d row(points[i].x, points[i].y, 1.0);
    const double rhs = -(points[i].x * points[i].x + points[i].y * points[i].y);
    ata += row * row.transpose();
    atb += row * rhs;
  }
  const Eigen::LDLT<Eigen::Matrix3d> ldlt(ata);
  if (ldlt.info() != Eigen::Success) return std::nullopt;
  const Eigen::Vector3d sol = ldlt.solve(atb);
  const double cx = -0.5 * sol(0);
  const double cy = -0.5 * sol(1);
  const double rad2 = cx * cx + cy * cy - sol(2);
  if (!(rad2 > 0.0) || !std::isfinite(rad2)) return std::nullopt;
  return CircleFit{cx, cy, std::sqrt(rad2)};
}

double total_heading_change(const std::vector<Pose>& poses) {
  double acc = 0.0;
  for (std::size_t i = 1; i < poses.size(); ++i)
    acc += std::abs(poses[i].psi - poses[i - 1].psi);
  return acc;
}

namespace {

double turning_diameter_from_poses(const std::vector<Pose>& poses) {
  constexpr double kFullTurn = 2.0 * std::numbers::pi;
  const double total = total_heading_change(poses);
  if (total < 1.5 * kFullTurn)
    throw std::invalid_argument("turning_diameter: no steady turn (heading change " +
                                std::to_string(total * 180.0 / std::numbers::pi) +
                                " deg < 540 deg)");
  double acc = 0.0;
  std::size_t first = poses.size();
  for (std::size_t i = 1; i < poses.size(); ++i) {
    acc += std::abs(poses[i].psi - poses[i - 1].psi);
    if (acc >= kFullTurn) {
      first = i;
      break;
    }
  }
  const auto fit = fit_circle_kasa(poses, first);
  if (!fit) throw std::invalid_argument("turning_diameter: degenerate circle fit");
  return 2.0 * fit->radius;
}

}  // namespace

double turning_diameter(const Trajectory& traj) {
  return turning_diameter_from_poses(traj.poses);
}

double turning_diameter(const TrialLog& log) {
  std::vector<Pose> poses;
  poses.reserve(log.size());
  for (const LogRow& row : log.rows) poses.push_back({row.x, row.y, row.psi});
  return turning_diameter_from_poses(poses);
}

std::vector<double> per_revolution_diameters(const std::vector<Pose>& poses) {
  constexpr double kFullTurn = 2.0 * std::numbers::pi;
  std::vector<double> out;
  std::size_t seg_start = 0;
  double acc = 0.0;
  for (std::size_t i = 1; i < poses.size(); ++i) {
    acc += std::abs(poses[i].psi - poses[i - 1].psi);
    if (acc >= kFullTurn) {
      std::vector<Pose> seg(poses.begin() + static_cast<std::ptrdiff_t>(seg_start),
                            poses.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      if (const auto fit = fit_circle_kasa(seg)) out.push_back(2.0 * fit->radius);
      seg_start = i;
      acc = 0.0;
    }
  }
  return out;
}

}  // namespace greyhelm
