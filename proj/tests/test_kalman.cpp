#include <gtest/gtest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "distancing/errors.hpp"
#include "distancing/kalman_filter.hpp"

using namespace distancing;

namespace {

void expect_valid_covariance(const StateCovariance& p) {
  EXPECT_LE((p - p.transpose()).cwiseAbs().maxCoeff(), 1e-9);
  Eigen::SelfAdjointEigenSolver<StateCovariance> es(p);
  EXPECT_GE(es.eigenvalues().minCoeff(), -1e-9);
}

}  // namespace

TEST(Measurement, FromBoxRoundTrip) {
  const BoundingBox box{10, 20, 30, 60};
  const Measurement m = Measurement::from_box(box);
  EXPECT_DOUBLE_EQ(m.u, 25.0);
  EXPECT_DOUBLE_EQ(m.v, 50.0);
  EXPECT_DOUBLE_EQ(m.aspect, 0.5);
  EXPECT_DOUBLE_EQ(m.height, 60.0);
  const BoundingBox back = m.to_box();
  EXPECT_NEAR(back.x, box.x, 1e-12);
  EXPECT_NEAR(back.y, box.y, 1e-12);
  EXPECT_NEAR(back.w, box.w, 1e-12);
  EXPECT_NEAR(back.h, box.h, 1e-12);
}

TEST(KalmanFilter, InitiateZeroVelocity) {
  const KalmanFilter kf;
  const KalmanState s = kf.initiate({100, 200, 0.5, 50});
  StateVector expected;
  expected << 100, 200, 0.5, 50, 0, 0, 0, 0;
  EXPECT_EQ(s.mean, expected);
  for (int i = 0; i < 8; ++i) EXPECT_GT(s.covariance(i, i), 0.0);
  EXPECT_TRUE(s.covariance.isDiagonal());
  const KalmanState again = kf.initiate({100, 200, 0.5, 50});
  EXPECT_EQ(again.mean, s.mean);
  EXPECT_EQ(again.covariance, s.covariance);
}

TEST(KalmanFilter, InitialVelocityVarianceIsTenTimesPosition) {
  const KalmanFilter kf;
  const KalmanState s = kf.initiate({0, 0, 1, 80});
  EXPECT_DOUBLE_EQ(s.covariance(4, 4), 10.0 * s.covariance(0, 0));
  EXPECT_DOUBLE_EQ(s.covariance(7, 7), 10.0 * s.covariance(3, 3));
}

TEST(KalmanFilter, PredictAdvancesConstantVelocity) {
  const KalmanFilter kf;
  KalmanState s = kf.initiate({0, 0, 1, 10});
  s.mean << 0, 0, 1, 10, 2, 3, 0, 0;
  const KalmanState p = kf.predict(s);
  EXPECT_DOUBLE_EQ(p.mean(0), 2.0);
  EXPECT_DOUBLE_EQ(p.mean(1), 3.0);
  EXPECT_DOUBLE_EQ(p.mean(2), 1.0);
  EXPECT_DOUBLE_EQ(p.mean(3), 10.0);
  EXPECT_GE(p.covariance.trace(), s.covariance.trace());
  expect_valid_covariance(p.covariance);
}

TEST(KalmanFilter, ZeroVelocityPredictionsStayPut) {
  const KalmanFilter kf;
  KalmanState s = kf.initiate({12, 34, 0.4, 90});
  for (int k = 0; k < 25; ++k) {
    const double trace = s.covariance.trace();
    s = kf.predict(s);
    EXPECT_GE(s.covariance.trace(), trace);
  }
  EXPECT_DOUBLE_EQ(s.mean(0), 12.0);
  EXPECT_DOUBLE_EQ(s.mean(1), 34.0);
}

TEST(KalmanFilter, ExactMeasurementLeavesMeanUnchanged) {
  const KalmanFilter kf;
  KalmanState s = kf.initiate({50, 60, 0.5, 100});
  s.mean(4) = 1.5;
  s = kf.predict(s);
  const KalmanState u = kf.update(s, s.measurement());
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(u.mean(i), s.mean(i), 1e-12);
}

TEST(KalmanFilter, UpdateShrinksPositionVariance) {
  const KalmanFilter kf;
  const KalmanState prior = kf.predict(kf.initiate({50, 60, 0.5, 100}));
  const KalmanState post = kf.update(prior, {53, 58, 0.5, 101});
  for (int i = 0; i < 4; ++i) EXPECT_LT(post.covariance(i, i), prior.covariance(i, i));
  // observed block ordering: prior - posterior is PSD
  const MeasurementCovariance diff =
      prior.covariance.topLeftCorner<4, 4>() - post.covariance.topLeftCorner<4, 4>();
  Eigen::SelfAdjointEigenSolver<MeasurementCovariance> es(diff);
  EXPECT_GE(es.eigenvalues().minCoeff(), -1e-9);
  expect_valid_covariance(post.covariance);
}

TEST(KalmanFilter, RepeatedConstantMeasurementConverges) {
  // Simulation oracle: predict/update cycles against a fixed target. The aspect
  // channel has a small fixed process noise, so it is the slowest to settle.
  const KalmanFilter kf;
  const Measurement target{300, 200, 0.45, 120};
  KalmanState s = kf.initiate({250, 230, 0.5, 100});
  for (int k = 0; k < 500; ++k) {
    s = kf.update(kf.predict(s), target);
    expect_valid_covariance(s.covariance);
    EXPECT_GT(s.mean(3), 0.0);
  }
  EXPECT_NEAR(s.mean(0), target.u, 1e-3);
  EXPECT_NEAR(s.mean(1), target.v, 1e-3);
  EXPECT_NEAR(s.mean(2), target.aspect, 1e-3);
  EXPECT_NEAR(s.mean(3), target.height, 1e-3);
  EXPECT_NEAR(s.mean(4), 0.0, 1e-3);
}

TEST(KalmanFilter, CovarianceStaysSymmetricPsdUnderNoisyUpdates) {
  const KalmanFilter kf;
  std::mt19937_64 rng(8);
  std::normal_distribution<double> noise(0.0, 2.0);
  KalmanState s = kf.initiate({100, 100, 0.5, 80});
  for (int k = 0; k < 500; ++k) {
    s = kf.predict(s);
    if (k % 3 != 0) s = kf.update(s, {100 + k + noise(rng), 100 + noise(rng), 0.5, 80 + noise(rng)});
    expect_valid_covariance(s.covariance);
  }
}

TEST(Mahalanobis, ZeroResidual) {
  const KalmanFilter kf;
  const KalmanState s = kf.predict(kf.initiate({10, 20, 0.5, 40}));
  EXPECT_NEAR(kf.mahalanobis(s, s.measurement()), 0.0, 1e-15);
}

TEST(Mahalanobis, QuadraticFormExamples) {
  MeasurementVector r;
  r << 1, 0, 0, 0;
  EXPECT_DOUBLE_EQ(squared_mahalanobis(r, MeasurementCovariance::Identity()), 1.0);

  MeasurementCovariance s = MeasurementCovariance::Identity();
  s(0, 0) = 4.0;
  r << 2, 0, 0, 0;
  EXPECT_DOUBLE_EQ(squared_mahalanobis(r, s), 1.0);
}

TEST(Mahalanobis, SingularCovarianceThrows) {
  MeasurementVector r = MeasurementVector::Ones();
  EXPECT_THROW(squared_mahalanobis(r, MeasurementCovariance::Zero()), NumericalError);
}

TEST(Mahalanobis, MatchesExplicitInverse) {
  const KalmanFilter kf;
  const KalmanState s = kf.predict(kf.predict(kf.initiate({10, 20, 0.5, 40})));
  const Measurement m{13, 18, 0.52, 41};
  const Projection proj = kf.project(s);
  const MeasurementVector r = m.vector() - proj.mean;
  const double explicit_form = r.transpose() * proj.covariance.inverse() * r;
  EXPECT_NEAR(kf.mahalanobis(s, m), explicit_form, 1e-10 * explicit_form);
}
