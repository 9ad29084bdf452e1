#include "distancing/kalman_filter.hpp"

#include <cmath>

#include "distancing/errors.hpp"

namespace distancing {

namespace {

StateCovariance transition() {
  StateCovariance f = StateCovariance::Identity();
  for (int i = 0; i < 4; ++i) {
    f(i, i + 4) = 1.0;
  }
  return f;
}

const StateCovariance& transition_matrix() {
  static const StateCovariance f = transition();
  return f;
}

double square(double x) { return x * x; }

}  // namespace

Measurement Measurement::from_box(const BoundingBox& box) {
  const Point2 c = centroid(box);
  return {c.x, c.y, box.w / box.h, box.h};
}

BoundingBox Measurement::to_box() const {
  const double w = aspect * height;
  return {u - w / 2.0, v - height / 2.0, w, height};
}

bool Measurement::valid() const {
  return std::isfinite(u) && std::isfinite(v) && std::isfinite(aspect) && std::isfinite(height) &&
         aspect > 0.0 && height > 0.0;
}

KalmanFilter::KalmanFilter(const NoiseConfig& noise) : noise_(noise) {}

KalmanState KalmanFilter::initiate(const Measurement& m) const {
  KalmanState s;
  s.mean << m.u, m.v, m.aspect, m.height, 0.0, 0.0, 0.0, 0.0;

  const double pos_var = square(2.0 * noise_.position_weight * m.height);
  const double aspect_var = square(noise_.aspect_std);
  const double k = noise_.initial_velocity_ratio;

  StateVector diag;
  diag << pos_var, pos_var, aspect_var, pos_var, k * pos_var, k * pos_var, k * aspect_var,
      k * pos_var;
  s.covariance = diag.asDiagonal();
  return s;
}

StateCovariance KalmanFilter::process_noise(double height) const {
  const double pos_var = square(noise_.position_weight * height);
  const double vel_var = square(noise_.velocity_weight * height);
  StateVector diag;
  diag << pos_var, pos_var, square(noise_.aspect_std), pos_var, vel_var, vel_var,
      square(noise_.aspect_velocity_std), vel_var;
  return diag.asDiagonal();
}

MeasurementCovariance KalmanFilter::measurement_noise(double height) const {
  const double var = square(noise_.measurement_weight * height);
  MeasurementVector diag;
  diag << var, var, square(noise_.aspect_measurement_std), var;
  return diag.asDiagonal();
}

KalmanState KalmanFilter::predict(const KalmanState& s) const {
  const StateCovariance& f = transition_matrix();
  KalmanState out;
  out.mean = f * s.mean;
  out.covariance = f * s.covariance * f.transpose() + process_noise(s.mean(3));
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose());
  return out;
}

Projection KalmanFilter::project(const KalmanState& s) const {
  return {s.mean.head<4>(),
          s.covariance.topLeftCorner<4, 4>() + measurement_noise(s.mean(3))};
}

KalmanState KalmanFilter::update(const KalmanState& s, const Measurement& m) const {
  const Projection proj = project(s);
  Eigen::LLT<MeasurementCovariance> llt(proj.covariance);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("kalman update: innovation covariance is not positive definite");
  }

  // K = P H^T S^-1; P H^T is the left 8x4 block of P.
  const Eigen::Matrix<double, 8, 4> pht = s.covariance.leftCols<4>();
  const Eigen::Matrix<double, 8, 4> gain = llt.solve(pht.transpose()).transpose();
  const MeasurementVector innovation = m.vector() - proj.mean;

  KalmanState out;
  out.mean = s.mean + gain * innovation;
  out.covariance = s.covariance - gain * proj.covariance * gain.transpose();
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose());
  return out;
}

double KalmanFilter::mahalanobis(const KalmanState& s, const Measurement& m) const {
  const Projection proj = project(s);
  return squared_mahalanobis(m.vector() - proj.mean, proj.covariance);
}

double squared_mahalanobis(const MeasurementVector& residual, const MeasurementCovariance& cov) {
  Eigen::LLT<MeasurementCovariance> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("mahalanobis: covariance is not positive definite");
  }
  const MeasurementVector z = llt.matrixL().solve(residual);
  return z.squaredNorm();
}

}  // namespace distancing
