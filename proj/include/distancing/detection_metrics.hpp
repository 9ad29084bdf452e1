#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "distancing/geometry.hpp"

namespace distancing {

/// A prediction after matching against ground truth.
struct ScoredOutcome {
  double score = 0.0;
  bool true_positive = false;
};

struct MatchResult {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  /// Outcomes in the order predictions were visited (descending score).
  std::vector<ScoredOutcome> outcomes;
};

/// Greedy matching in descending score order (ties keep input order). Each
/// prediction takes its highest-IoU unconsumed truth box and counts as a true
/// positive iff that IoU is at least `iou_threshold`.
MatchResult match_detections(std::span<const ScoredBox> predictions,
                             std::span<const BoundingBox> truth, double iou_threshold);

struct PRPoint {
  double precision = 0.0;
  double recall = 0.0;
  double score_threshold = 0.0;
};

/// Cumulative precision/recall as the score threshold sweeps downwards.
/// Outcomes may come from many frames; `total_truth` counts every truth box.
std::vector<PRPoint> precision_recall_curve(std::span<const ScoredOutcome> outcomes,
                                            std::size_t total_truth);

/// All-points interpolated area under the curve: precision is replaced by its
/// running maximum from the right before integrating over recall.
double average_precision(std::span<const PRPoint> curve);

/// Mean over per-class average precisions; 0 for no classes.
double mean_average_precision(std::span<const double> per_class_ap);

struct FrameEvaluation {
  std::vector<ScoredBox> predictions;
  std::vector<BoundingBox> truth;
};

struct EvaluationSummary {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  double average_precision = 0.0;
  double mean_average_precision = 0.0;
};

/// Single-class ("person") evaluation over a sequence of frames.
EvaluationSummary evaluate_frames(std::span<const FrameEvaluation> frames, double iou_threshold);

}  // namespace distancing
