#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "distancing/geometry.hpp"
#include "distancing/track.hpp"

namespace distancing {

/// A person in (x, y, depth) space: box centroid plus depth proxy.
struct PersonFeature {
  TrackId track_id = 0;
  double x = 0.0;
  double y = 0.0;
  double d = 0.0;

  friend bool operator==(const PersonFeature&, const PersonFeature&) = default;
};

PersonFeature feature_of(const BoundingBox& box, TrackId track_id,
                         DepthFormula formula = DepthFormula::Printed);

/// Symmetric matrix of pairwise L2 distances with a zero diagonal.
class DistanceMatrix {
public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {}

  std::size_t size() const { return static_cast<std::size_t>(values_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXd& values() const { return values_; }

private:
  Eigen::MatrixXd values_;
};

/// Per-axis multipliers applied to (x, y, d) before distances are taken.
using AxisScale = std::array<double, 3>;
inline constexpr AxisScale kUnitScale{1.0, 1.0, 1.0};

/// All pairwise distances, computed as whole-matrix array arithmetic per axis.
DistanceMatrix pairwise_l2(std::span<const PersonFeature> features,
                           const AxisScale& scale = kUnitScale);

struct ThresholdBounds {
  double near_top = 90.0;
  double near_bottom = 170.0;
};

/// Closeness threshold at image row `y`: linear from `near_top` at y = 0 to
/// `near_bottom` at y = frame_h. `y` is clamped to the frame.
double closeness_threshold(double y, double frame_h, const ThresholdBounds& bounds = {});

struct SocialGroup {
  /// Ascending track ids, at least two.
  std::vector<TrackId> members;
  int color_index = 0;

  friend bool operator==(const SocialGroup&, const SocialGroup&) = default;
};

/// Connected components of the closeness graph with at least two members.
///
/// i and j are adjacent iff distance(i, j) < min(threshold(y_i), threshold(y_j)).
/// Groups are ordered by their smallest member id and colored 0, 1, 2, ... in
/// that order.
std::vector<SocialGroup> build_groups(const DistanceMatrix& matrix,
                                      std::span<const PersonFeature> features, double frame_h,
                                      const ThresholdBounds& bounds = {});

struct ViolationStats {
  std::size_t groups = 0;
  std::size_t people = 0;
  double violation_index = 0.0;
  double estimated_violations = 0.0;

  friend bool operator==(const ViolationStats&, const ViolationStats&) = default;
};

/// n_g, n_p, v_i = n_p / n_g (0 without groups), and v_i * n_g.
ViolationStats violation_stats(std::span<const SocialGroup> groups);

}  // namespace distancing
