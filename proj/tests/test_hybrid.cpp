#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "greyhelm/hybrid.hpp"
#include "greyhelm/rng.hpp"

using namespace greyhelm;

namespace {

const VesselParams kVessel = reference_vessel();

FfnWeights random_weights(std::uint64_t seed, int h = 10) {
  FfnWeights w = FfnWeights::zeros(h);
  Rng rng(seed);
  auto fill = [&](Eigen::MatrixXd& m, double s) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.uniform(-s, s);
  };
  auto fillv = [&](Eigen::VectorXd& v, double s) {
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.uniform(-s, s);
  };
  fill(w.w1, 0.6);
  fillv(w.b1, 0.2);
  fill(w.w2, 0.4);
  fillv(w.b2, 0.2);
  fill(w.w3, 0.5);
  fillv(w.b3, 0.3);
  return w;
}

std::vector<TrainingSample> random_batch(std::uint64_t seed, std::size_t count,
                                         double residual_scale = 0.1) {
  Rng rng(seed);
  std::vector<TrainingSample> batch;
  for (std::size_t i = 0; i < count; ++i) {
    TrainingSample s;
    s.feature = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-0.3, 0.3),
                 rng.uniform(-0.5, 0.5), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    s.base << rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5);
    s.target = s.base + residual_scale * OutputArray{rng.uniform(-1.0, 1.0),
                                                     rng.uniform(-1.0, 1.0),
                                                     rng.uniform(-1.0, 1.0)};
    batch.push_back(s);
  }
  return batch;
}

}  // namespace

TEST_CASE("hybrid step with zero weights is bit-identical to the physical step") {
  const FfnWeights zero = FfnWeights::zeros(10);
  const FeatureScaler sc = FeatureScaler::identity();
  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    const MotionState s{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0),
                        rng.uniform(-0.4, 0.4)};
    const double psi = rng.uniform(-8.0, 8.0);
    const ControlInput c{rng.uniform(-0.5, 0.5), rng.uniform(0.0, 5500.0)};
    const MotionState phys = physical_step(kVessel, s, c, 0.1);
    const MotionState hyb = hybrid_step(kVessel, zero, sc, s, psi, c, 0.1);
    CHECK(hyb.u == phys.u);
    CHECK(hyb.v == phys.v);
    CHECK(hyb.r == phys.r);
  }
}

TEST_CASE("dt = 0 with zero weights is the identity") {
  const FfnWeights zero = FfnWeights::zeros(10);
  const MotionState s{1.0, -0.2, 0.1};
  const MotionState out = hybrid_step(kVessel, zero, FeatureScaler::identity(), s, 0.4,
                                      {0.1, 3000.0}, 0.0);
  CHECK(out.u == s.u);
  CHECK(out.v == s.v);
  CHECK(out.r == s.r);
}

TEST_CASE("hybrid output decomposes into physical step plus network term") {
  const FfnWeights w = random_weights(7);
  FeatureScaler sc = FeatureScaler::identity();
  sc.target_scale << 0.01, 0.02, 0.005;
  const MotionState s{2.0, 0.3, -0.08};
  const ControlInput c{0.25, 4700.0};
  const double psi = 1.1;

  const MotionState hyb = hybrid_step(kVessel, w, sc, s, psi, c, 0.1);
  const MotionState phys = physical_step(kVessel, s, c, 0.1);
  const FeatureVector f = hybrid_features(kVessel, s, psi, c, 0.1);
  const OutputArray g = ffn_apply(w, sc, f);

  const NondimScheme& ns = kVessel.nondim;
  CHECK(hyb.u - phys.u == doctest::Approx(g(0) * ns.u_ref).epsilon(1e-12));
  CHECK(hyb.v - phys.v == doctest::Approx(g(1) * ns.u_ref).epsilon(1e-12));
  CHECK(hyb.r - phys.r ==
        doctest::Approx(g(2) * ns.u_ref / ns.length).epsilon(1e-12));

  // prime-space view agrees with the SI step
  const MotionState prime = hybrid_predict(kVessel, w, sc, s, psi, c, 0.1);
  const MotionState back = from_prime(prime, ns);
  CHECK(back.u == doctest::Approx(hyb.u).epsilon(1e-13));
  CHECK(back.v == doctest::Approx(hyb.v).epsilon(1e-13));
  CHECK(back.r == doctest::Approx(hyb.r).epsilon(1e-13));
}

TEST_CASE("hybrid prediction is 2*pi-periodic in heading") {
  const FfnWeights w = random_weights(31);
  const FeatureScaler sc = FeatureScaler::identity();
  Rng rng(14);
  for (int i = 0; i < 50; ++i) {
    const MotionState s{rng.uniform(0.0, 3.0), rng.uniform(-1.0, 1.0),
                        rng.uniform(-0.3, 0.3)};
    const ControlInput c{rng.uniform(-0.5, 0.5), 5000.0};
    const double psi = rng.uniform(-10.0, 10.0);
    const MotionState a = hybrid_step(kVessel, w, sc, s, psi, c, 0.1);
    const MotionState b =
        hybrid_step(kVessel, w, sc, s, psi + 2.0 * std::numbers::pi, c, 0.1);
    CHECK(a.u == doctest::Approx(b.u).epsilon(1e-12));
    CHECK(a.v == doctest::Approx(b.v).epsilon(1e-12));
    CHECK(a.r == doctest::Approx(b.r).epsilon(1e-12));
  }
}

TEST_CASE("loss values") {
  const FeatureScaler sc = FeatureScaler::identity();
  SUBCASE("zero weights, targets equal to base, lambda 0 -> zero") {
    auto batch = random_batch(3, 16);
    for (auto& s : batch) s.target = s.base;
    CHECK(loss(FfnWeights::zeros(10), sc, batch, 0.0) == 0.0);
  }
  SUBCASE("regularizer vanishes for zero weights") {
    const auto batch = random_batch(4, 16);
    CHECK(loss(FfnWeights::zeros(10), sc, batch, 0.5) ==
          doctest::Approx(loss(FfnWeights::zeros(10), sc, batch, 0.0)).epsilon(1e-15));
  }
  SUBCASE("single sample with residual (0.1, 0, 0) gives 0.01") {
    TrainingSample s;
    s.feature = {0.0, 0.0, 0.0, 0.0, 1.0, 0.0};
    s.base << 0.2, 0.3, 0.4;
    s.target << 0.3, 0.3, 0.4;  // residual 0.1 on the first channel
    const std::vector<TrainingSample> batch{s};
    CHECK(loss(FfnWeights::zeros(10), sc, batch, 0.0) ==
          doctest::Approx(0.01).epsilon(1e-12));
  }
  SUBCASE("loss difference equals the regularizer") {
    const FfnWeights w = random_weights(8);
    const auto batch = random_batch(5, 32);
    const double l0 = loss(w, sc, batch, 0.0);
    const double l1 = loss(w, sc, batch, 0.01);
    CHECK(l1 - l0 == doctest::Approx(0.005 * w.squared_frobenius()).epsilon(1e-10));
  }
  SUBCASE("empty batch throws") {
    const std::vector<TrainingSample> empty;
    CHECK_THROWS_AS(loss(FfnWeights::zeros(10), sc, empty, 0.0), std::invalid_argument);
  }
}

TEST_CASE("analytic gradient matches central finite differences") {
  const FeatureScaler sc = [] {
    FeatureScaler s;
    s.target_scale << 0.05, 0.04, 0.03;
    return s;
  }();
  const double step = 1e-6;
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    FfnWeights w = random_weights(500 + static_cast<std::uint64_t>(trial), 6);
    // residuals sized so the loss stays O(0.01): keeps finite-difference
    // roundoff (eps * loss / step) well below the gradients being checked
    const auto batch = random_batch(900 + static_cast<std::uint64_t>(trial), 8, 0.004);
    const double lambda = trial % 2 == 0 ? 0.01 : 0.0;
    const FfnWeights g = loss_gradient(w, sc, batch, lambda);

    auto check_block = [&](Eigen::MatrixXd& param, const Eigen::MatrixXd& grad) {
      for (Eigen::Index i = 0; i < param.rows(); ++i) {
        for (Eigen::Index j = 0; j < param.cols(); ++j) {
          const double saved = param(i, j);
          param(i, j) = saved + step;
          const double hi = loss(w, sc, batch, lambda);
          param(i, j) = saved - step;
          const double lo = loss(w, sc, batch, lambda);
          param(i, j) = saved;
          const double fd = (hi - lo) / (2.0 * step);
          const double denom = std::max({std::abs(fd), std::abs(grad(i, j)), 1e-5});
          worst = std::max(worst, std::abs(fd - grad(i, j)) / denom);
        }
      }
    };
    auto check_vec = [&](Eigen::VectorXd& param, const Eigen::VectorXd& grad) {
      for (Eigen::Index i = 0; i < param.size(); ++i) {
        const double saved = param(i);
        param(i) = saved + step;
        const double hi = loss(w, sc, batch, lambda);
        param(i) = saved - step;
        const double lo = loss(w, sc, batch, lambda);
        param(i) = saved;
        const double fd = (hi - lo) / (2.0 * step);
        const double denom = std::max({std::abs(fd), std::abs(grad(i)), 1e-5});
        worst = std::max(worst, std::abs(fd - grad(i)) / denom);
      }
    };
    check_block(w.w1, g.w1);
    check_vec(w.b1, g.b1);
    check_block(w.w2, g.w2);
    check_vec(w.b2, g.b2);
    check_block(w.w3, g.w3);
    check_vec(w.b3, g.b3);
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("gradient special cases") {
  const FeatureScaler sc = FeatureScaler::identity();
  SUBCASE("zero residual and lambda 0 give zero gradient") {
    auto batch = random_batch(11, 8);
    for (auto& s : batch) s.target = s.base;
    const FfnWeights g = loss_gradient(FfnWeights::zeros(10), sc, batch, 0.0);
    CHECK(g.w1.isZero());
    CHECK(g.b1.isZero());
    CHECK(g.w3.isZero());
    CHECK(g.b3.isZero());
  }
  SUBCASE("lambda adds exactly lambda*W on matrices, nothing on biases") {
    const FfnWeights w = random_weights(13);
    const auto batch = random_batch(14, 8);
    const FfnWeights g0 = loss_gradient(w, sc, batch, 0.0);
    const FfnWeights g1 = loss_gradient(w, sc, batch, 0.01);
    CHECK((g1.w1 - g0.w1 - 0.01 * w.w1).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((g1.w2 - g0.w2 - 0.01 * w.w2).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((g1.w3 - g0.w3 - 0.01 * w.w3).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((g1.b1 - g0.b1).cwiseAbs().maxCoeff() == 0.0);
    CHECK((g1.b3 - g0.b3).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("pure data-driven forward") {
  SUBCASE("zero weights give zero accelerations") {
    const StateDeriv d = pure_datadriven_forward(FfnWeights::zeros(10),
                                                 FeatureScaler::identity(),
                                                 {0.5, 0.1, 0.02}, 0.7, {0.2, 5000.0});
    CHECK(d.du == 0.0);
    CHECK(d.dv == 0.0);
    CHECK(d.dr == 0.0);
  }
  SUBCASE("scales with target_scale") {
    FfnWeights w = FfnWeights::zeros(10);
    w.b3 << 1.0, 2.0, -1.0;
    FeatureScaler sc = FeatureScaler::identity();
    sc.target_scale << 0.1, 0.01, 0.002;
    const StateDeriv d =
        pure_datadriven_forward(w, sc, {0.0, 0.0, 0.0}, 0.0, {0.0, 0.0});
    CHECK(d.du == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(d.dv == doctest::Approx(0.02).epsilon(1e-15));
    CHECK(d.dr == doctest::Approx(-0.002).epsilon(1e-15));
  }
}
