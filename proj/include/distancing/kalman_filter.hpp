#pragma once

#include <Eigen/Dense>

#include "distancing/geometry.hpp"

namespace distancing {

using StateVector = Eigen::Matrix<double, 8, 1>;
using StateCovariance = Eigen::Matrix<double, 8, 8>;
using MeasurementVector = Eigen::Matrix<double, 4, 1>;
using MeasurementCovariance = Eigen::Matrix<double, 4, 4>;

/// Observed box parameters: centroid (u, v), aspect ratio w/h, height.
struct Measurement {
  double u = 0.0;
  double v = 0.0;
  double aspect = 1.0;
  double height = 1.0;

  static Measurement from_box(const BoundingBox& box);
  BoundingBox to_box() const;
  MeasurementVector vector() const { return {u, v, aspect, height}; }
  bool valid() const;
};

/// Gaussian belief over (u, v, aspect, h, du, dv, daspect, dh).
struct KalmanState {
  StateVector mean = StateVector::Zero();
  StateCovariance covariance = StateCovariance::Identity();

  Measurement measurement() const { return {mean(0), mean(1), mean(2), mean(3)}; }
  BoundingBox box() const { return measurement().to_box(); }
};

/// Predicted measurement distribution (y, S) of a state.
struct Projection {
  MeasurementVector mean;
  MeasurementCovariance covariance;
};

/// Noise model. Position and height standard deviations scale with the
/// current box height; aspect ratio uses absolute standard deviations.
struct NoiseConfig {
  double position_weight = 1.0 / 20.0;
  double velocity_weight = 1.0 / 160.0;
  double measurement_weight = 1.0 / 20.0;
  /// Initial velocity variance as a multiple of the initial position variance.
  double initial_velocity_ratio = 10.0;
  double aspect_std = 1e-2;
  double aspect_velocity_std = 1e-5;
  double aspect_measurement_std = 1e-1;
};

/// Constant-velocity Kalman filter with observation matrix [I4 | 0].
class KalmanFilter {
public:
  KalmanFilter() = default;
  explicit KalmanFilter(const NoiseConfig& noise);

  const NoiseConfig& noise() const { return noise_; }

  KalmanState initiate(const Measurement& m) const;
  KalmanState predict(const KalmanState& s) const;
  Projection project(const KalmanState& s) const;

  /// Throws NumericalError if the innovation covariance is not positive definite.
  KalmanState update(const KalmanState& s, const Measurement& m) const;

  /// Squared Mahalanobis distance of `m` from the projected state.
  double mahalanobis(const KalmanState& s, const Measurement& m) const;

  MeasurementCovariance measurement_noise(double height) const;
  StateCovariance process_noise(double height) const;

private:
  NoiseConfig noise_;
};

/// Squared Mahalanobis form r^T S^-1 r. Throws NumericalError if S is not
/// positive definite.
double squared_mahalanobis(const MeasurementVector& residual, const MeasurementCovariance& cov);

}  // namespace distancing
