#include "distancing/proximity.hpp"

#include <algorithm>
#include <numeric>

#include "distancing/errors.hpp"

namespace distancing {

namespace {

// Disjoint-set forest with path halving and union by size.
class DisjointSets {
public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace

PersonFeature feature_of(const BoundingBox& box, TrackId track_id, DepthFormula formula) {
  const Point2 c = centroid(box);
  return {track_id, c.x, c.y, depth_estimate(box, formula)};
}

DistanceMatrix pairwise_l2(std::span<const PersonFeature> features, const AxisScale& scale) {
  const auto n = static_cast<Eigen::Index>(features.size());
  Eigen::ArrayXXd coords(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const PersonFeature& f = features[static_cast<std::size_t>(i)];
    coords(i, 0) = f.x * scale[0];
    coords(i, 1) = f.y * scale[1];
    coords(i, 2) = f.d * scale[2];
  }

  Eigen::ArrayXXd sq = Eigen::ArrayXXd::Zero(n, n);
  for (Eigen::Index axis = 0; axis < 3; ++axis) {
    const Eigen::ArrayXd col = coords.col(axis);
    const Eigen::ArrayXXd diff = col.replicate(1, n) - col.transpose().replicate(n, 1);
    sq += diff.square();
  }
  return DistanceMatrix(sq.sqrt().matrix());
}

double closeness_threshold(double y, double frame_h, const ThresholdBounds& bounds) {
  if (!(frame_h > 0.0)) {
    throw ParameterError("closeness_threshold: frame height must be positive");
  }
  const double t = std::clamp(y, 0.0, frame_h) / frame_h;
  return bounds.near_top + (bounds.near_bottom - bounds.near_top) * t;
}

std::vector<SocialGroup> build_groups(const DistanceMatrix& matrix,
                                      std::span<const PersonFeature> features, double frame_h,
                                      const ThresholdBounds& bounds) {
  const std::size_t n = features.size();
  if (matrix.size() != n) {
    throw ParameterError("build_groups: distance matrix size does not match feature count");
  }

  std::vector<double> thresholds(n);
  for (std::size_t i = 0; i < n; ++i) {
    thresholds[i] = closeness_threshold(features[i].y, frame_h, bounds);
  }

  DisjointSets sets(n);
  std::vector<char> has_neighbor(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (matrix(i, j) < std::min(thresholds[i], thresholds[j])) {
        sets.unite(i, j);
        has_neighbor[i] = has_neighbor[j] = 1;
      }
    }
  }

  std::vector<std::vector<TrackId>> by_root(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (has_neighbor[i]) by_root[sets.find(i)].push_back(features[i].track_id);
  }

  std::vector<SocialGroup> groups;
  for (auto& members : by_root) {
    if (members.size() < 2) continue;
    std::sort(members.begin(), members.end());
    groups.push_back({std::move(members), 0});
  }
  std::sort(groups.begin(), groups.end(), [](const SocialGroup& a, const SocialGroup& b) {
    return a.members.front() < b.members.front();
  });
  for (std::size_t g = 0; g < groups.size(); ++g) {
    groups[g].color_index = static_cast<int>(g);
  }
  return groups;
}

ViolationStats violation_stats(std::span<const SocialGroup> groups) {
  ViolationStats stats;
  stats.groups = groups.size();
  for (const SocialGroup& g : groups) stats.people += g.members.size();
  if (stats.groups > 0) {
    stats.violation_index =
        static_cast<double>(stats.people) / static_cast<double>(stats.groups);
  }
  stats.estimated_violations = stats.violation_index * static_cast<double>(stats.groups);
  return stats;
}

}  // namespace distancing
