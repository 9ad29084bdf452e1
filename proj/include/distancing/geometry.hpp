#pragma once

#include <span>
#include <vector>

namespace distancing {

/// Axis-aligned box in continuous pixel coordinates, (left, top, width, height).
struct BoundingBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double area() const { return w * h; }
  double right() const { return x + w; }
  double bottom() const { return y + h; }

  /// Finite coordinates and strictly positive extent.
  bool valid() const;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

struct ScoredBox {
  BoundingBox box;
  double score = 0.0;

  friend bool operator==(const ScoredBox&, const ScoredBox&) = default;
};

/// Prior box of relative size `size` and aspect ratio `ratio`, centred on a location.
struct Anchor {
  double center_x = 0.0;
  double center_y = 0.0;
  double w = 0.0;
  double h = 0.0;
  double size = 0.0;
  double ratio = 0.0;
};

/// Anchor and NMS settings for one detector family.
struct AnchorConfig {
  std::vector<double> sizes;
  std::vector<double> ratios;
  double nms_iou_threshold = 0.7;

  std::size_t anchors_per_location() const { return sizes.size() * ratios.size(); }
};

namespace anchor_presets {
AnchorConfig faster_rcnn();
AnchorConfig ssd();
AnchorConfig yolo_v3();
}  // namespace anchor_presets

/// Intersection over union in [0, 1]. Both boxes must be valid.
double iou(const BoundingBox& a, const BoundingBox& b);

/// Greedy non-max suppression.
///
/// Candidates are visited in descending score order (ties keep input order). A
/// candidate survives if its IoU with every already-kept box is strictly below
/// `iou_threshold`. Throws ParameterError unless the threshold is in (0, 1].
std::vector<ScoredBox> nms(std::span<const ScoredBox> candidates, double iou_threshold);

/// |locations| * |sizes| * |ratios| anchors of dimension
/// (image_w * p * sqrt(r)) x (image_h * p * sqrt(r)), location-major.
std::vector<Anchor> generate_anchors(double image_w, double image_h, std::span<const double> sizes,
                                     std::span<const double> ratios,
                                     std::span<const Point2> locations);

Point2 centroid(const BoundingBox& box);

/// How the depth proxy groups its denominator.
enum class DepthFormula {
  /// d = 2*3.14*180 / (w + h*360) * 1000 + 3, operator precedence as written.
  Printed,
  /// d = 2*3.14*180 / ((w + h) * 360) * 1000 + 3.
  GroupedSum,
};

/// Monocular depth proxy from box dimensions. Larger boxes are closer (smaller d).
double depth_estimate(const BoundingBox& box, DepthFormula formula = DepthFormula::Printed);

}  // namespace distancing
