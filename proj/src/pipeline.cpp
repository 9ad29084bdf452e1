#include "distancing/pipeline.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "distancing/errors.hpp"

namespace distancing {

std::string serialize(const RunSummary& s) {
  return nlohmann::ordered_json{{"total_frames", s.total_frames},
                                {"violation_frames", s.violation_frames},
                                {"skipped_lines", s.skipped_lines},
                                {"tracks_created", s.tracks_created},
                                {"max_violation_index", s.max_violation_index},
                                {"mean_violation_index", s.mean_violation_index}}
      .dump(2);
}

Pipeline::Pipeline(const PipelineConfig& config) : config_(config), tracker_(config.tracker) {
  validate(config_);
}

FrameReport Pipeline::process(const FrameBatch& batch) {
  if (started_ && batch.frame_id <= last_frame_) {
    throw FormatError("frame " + std::to_string(batch.frame_id) + " does not follow frame " +
                      std::to_string(last_frame_));
  }
  started_ = true;
  last_frame_ = batch.frame_id;

  FrameReport report;
  try {
    report = analyze(batch);
  } catch (const FrameError&) {
    throw;
  } catch (const std::exception& e) {
    throw FrameError("frame " + std::to_string(batch.frame_id) + ": " + e.what());
  }

  ++summary_.total_frames;
  if (report.violation) {
    ++summary_.violation_frames;
    violation_index_sum_ += report.stats.violation_index;
    summary_.max_violation_index =
        std::max(summary_.max_violation_index, report.stats.violation_index);
    summary_.mean_violation_index =
        violation_index_sum_ / static_cast<double>(summary_.violation_frames);
  }
  return report;
}

FrameReport Pipeline::analyze(const FrameBatch& batch) {
  std::vector<DetectionInput> inputs;
  inputs.reserve(batch.records.size());
  for (const DetectionRecord& r : batch.records) {
    if (r.confidence < config_.confidence_threshold) continue;
    inputs.push_back({Measurement::from_box(r.box), r.descriptor});
  }

  const StepResult step = tracker_.step(inputs);
  summary_.tracks_created += static_cast<std::size_t>(
      std::count_if(step.events.begin(), step.events.end(),
                    [](const TrackEvent& e) { return e.kind == TrackEventKind::Created; }));

  std::vector<TrackSummary> tracks;
  std::vector<PersonFeature> features;
  for (const Track& t : tracker_.tracks()) {
    const BoundingBox box = t.box();
    tracks.push_back({t.id, box, t.status});
    if (t.is_confirmed() && t.frames_since_update == 0) {
      features.push_back(feature_of(box, t.id, config_.proximity.depth_formula));
    }
  }

  const DistanceMatrix distances = pairwise_l2(features, config_.proximity.axis_scale);
  const std::vector<SocialGroup> groups =
      build_groups(distances, features, config_.frame_height, config_.proximity.thresholds);
  return frame_report(tracks, groups, violation_stats(groups), batch.frame_id, batch.timestamp_ms);
}

RunSummary run(const PipelineConfig& config, std::istream& source, const RunSinks& sinks) {
  const ParsedStream parsed = parse_stream(source);
  if (sinks.warnings) {
    for (const ParseWarning& w : parsed.warnings) {
      *sinks.warnings << "warning: line " << w.line << " skipped: " << w.message << '\n';
    }
  }
  Pipeline pipeline(config);
  for (const FrameBatch& batch : parsed.batches) {
    const FrameReport report = pipeline.process(batch);
    if (sinks.reports) *sinks.reports << serialize(report) << '\n';
    if (sinks.events) {
      if (auto event = violation_event(report)) *sinks.events << serialize(*event) << '\n';
    }
    if (sinks.overlay) *sinks.overlay << serialize(emit_overlay(report)) << '\n';
  }
  RunSummary summary = pipeline.summary();
  summary.skipped_lines = parsed.skipped_lines;
  return summary;
}

}  // namespace distancing
