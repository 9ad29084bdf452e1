#include "distancing/detection_metrics.hpp"

#include <algorithm>
#include <numeric>

#include "distancing/errors.hpp"

namespace distancing {

MatchResult match_detections(std::span<const ScoredBox> predictions,
                             std::span<const BoundingBox> truth, double iou_threshold) {
  if (!(iou_threshold > 0.0 && iou_threshold < 1.0)) {
    throw ParameterError("match_detections: iou_threshold must be in (0, 1)");
  }

  std::vector<std::size_t> order(predictions.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return predictions[l].score > predictions[r].score;
  });

  MatchResult result;
  std::vector<char> consumed(truth.size(), 0);
  for (std::size_t idx : order) {
    const ScoredBox& pred = predictions[idx];
    double best_iou = 0.0;
    std::size_t best = truth.size();
    for (std::size_t t = 0; t < truth.size(); ++t) {
      if (consumed[t]) continue;
      const double o = iou(pred.box, truth[t]);
      if (best == truth.size() || o > best_iou) {
        best_iou = o;
        best = t;
      }
    }
    const bool tp = best < truth.size() && best_iou >= iou_threshold;
    if (tp) {
      consumed[best] = 1;
      ++result.true_positives;
    } else {
      ++result.false_positives;
    }
    result.outcomes.push_back({pred.score, tp});
  }
  result.false_negatives = truth.size() - result.true_positives;
  return result;
}

std::vector<PRPoint> precision_recall_curve(std::span<const ScoredOutcome> outcomes,
                                            std::size_t total_truth) {
  std::vector<ScoredOutcome> sorted(outcomes.begin(), outcomes.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ScoredOutcome& l, const ScoredOutcome& r) { return l.score > r.score; });

  std::vector<PRPoint> curve;
  curve.reserve(sorted.size());
  std::size_t tp = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i].true_positive) ++tp;
    const double precision = static_cast<double>(tp) / static_cast<double>(i + 1);
    const double recall =
        total_truth == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(total_truth);
    curve.push_back({precision, recall, sorted[i].score});
  }
  return curve;
}

double average_precision(std::span<const PRPoint> curve) {
  if (curve.empty()) return 0.0;

  std::vector<double> envelope(curve.size());
  double running = 0.0;
  for (std::size_t i = curve.size(); i-- > 0;) {
    running = std::max(running, curve[i].precision);
    envelope[i] = running;
  }

  double ap = 0.0;
  double prev_recall = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double dr = curve[i].recall - prev_recall;
    if (dr > 0.0) ap += dr * envelope[i];
    prev_recall = std::max(prev_recall, curve[i].recall);
  }
  return std::clamp(ap, 0.0, 1.0);
}

double mean_average_precision(std::span<const double> per_class_ap) {
  if (per_class_ap.empty()) return 0.0;
  return std::accumulate(per_class_ap.begin(), per_class_ap.end(), 0.0) /
         static_cast<double>(per_class_ap.size());
}

EvaluationSummary evaluate_frames(std::span<const FrameEvaluation> frames, double iou_threshold) {
  EvaluationSummary summary;
  std::vector<ScoredOutcome> outcomes;
  std::size_t total_truth = 0;
  for (const FrameEvaluation& f : frames) {
    MatchResult m = match_detections(f.predictions, f.truth, iou_threshold);
    summary.true_positives += m.true_positives;
    summary.false_positives += m.false_positives;
    summary.false_negatives += m.false_negatives;
    total_truth += f.truth.size();
    outcomes.insert(outcomes.end(), m.outcomes.begin(), m.outcomes.end());
  }
  const std::vector<PRPoint> curve = precision_recall_curve(outcomes, total_truth);
  summary.average_precision = average_precision(curve);
  const double per_class[] = {summary.average_precision};
  summary.mean_average_precision = mean_average_precision(per_class);
  return summary;
}

}  // namespace distancing
