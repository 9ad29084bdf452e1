#include "distancing/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "distancing/errors.hpp"

namespace distancing {

namespace {

// 2 * 3.14 * 180, with the truncated constant the depth heuristic was tuned on.
constexpr double kDepthNumerator = 2.0 * 3.14 * 180.0;
constexpr double kDepthScale = 1000.0;
constexpr double kDepthOffset = 3.0;

}  // namespace

bool BoundingBox::valid() const {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(w) && std::isfinite(h) && w > 0.0 &&
         h > 0.0;
}

namespace anchor_presets {

AnchorConfig faster_rcnn() { return {{0.25, 0.5, 1.0}, {0.5, 1.0, 2.0}, 0.7}; }
AnchorConfig ssd() { return {{0.2, 0.57, 0.95}, {0.3, 0.5, 1.0}, 0.6}; }
AnchorConfig yolo_v3() { return {{0.25, 0.5, 1.0}, {0.5, 1.0, 2.0}, 0.7}; }

}  // namespace anchor_presets

double iou(const BoundingBox& a, const BoundingBox& b) {
  const double iw = std::min(a.right(), b.right()) - std::max(a.x, b.x);
  const double ih = std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
  if (iw <= 0.0 || ih <= 0.0) {
    return 0.0;
  }
  // Areas from corner extents so that iou(a, a) is exactly 1.
  auto extent_area = [](const BoundingBox& r) { return (r.right() - r.x) * (r.bottom() - r.y); };
  const double inter = iw * ih;
  const double uni = extent_area(a) + extent_area(b) - inter;
  return std::clamp(inter / uni, 0.0, 1.0);
}

std::vector<ScoredBox> nms(std::span<const ScoredBox> candidates, double iou_threshold) {
  if (!(iou_threshold > 0.0 && iou_threshold <= 1.0)) {
    throw ParameterError("nms: iou_threshold must be in (0, 1], got " +
                         std::to_string(iou_threshold));
  }

  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return candidates[l].score > candidates[r].score;
  });

  std::vector<ScoredBox> kept;
  for (std::size_t idx : order) {
    const ScoredBox& cand = candidates[idx];
    const bool suppressed = std::any_of(kept.begin(), kept.end(), [&](const ScoredBox& k) {
      return iou(k.box, cand.box) >= iou_threshold;
    });
    if (!suppressed) {
      kept.push_back(cand);
    }
  }
  return kept;
}

std::vector<Anchor> generate_anchors(double image_w, double image_h, std::span<const double> sizes,
                                     std::span<const double> ratios,
                                     std::span<const Point2> locations) {
  if (!(image_w > 0.0) || !(image_h > 0.0)) {
    throw ParameterError("generate_anchors: image dimensions must be positive");
  }
  for (double p : sizes) {
    if (!(p > 0.0 && p <= 1.0)) {
      throw ParameterError("generate_anchors: size must be in (0, 1], got " + std::to_string(p));
    }
  }
  for (double r : ratios) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw ParameterError("generate_anchors: ratio must be positive, got " + std::to_string(r));
    }
  }

  std::vector<Anchor> anchors;
  anchors.reserve(locations.size() * sizes.size() * ratios.size());
  for (const Point2& loc : locations) {
    for (double p : sizes) {
      for (double r : ratios) {
        const double scale = p * std::sqrt(r);
        anchors.push_back({loc.x, loc.y, image_w * scale, image_h * scale, p, r});
      }
    }
  }
  return anchors;
}

Point2 centroid(const BoundingBox& box) { return {box.x + box.w / 2.0, box.y + box.h / 2.0}; }

double depth_estimate(const BoundingBox& box, DepthFormula formula) {
  const double denom =
      formula == DepthFormula::Printed ? box.w + box.h * 360.0 : (box.w + box.h) * 360.0;
  return kDepthNumerator / denom * kDepthScale + kDepthOffset;
}

}  // namespace distancing
