#pragma once

#include <optional>
#include <span>
#include <vector>

#include "distancing/association.hpp"
#include "distancing/kalman_filter.hpp"
#include "distancing/track.hpp"

namespace distancing {

struct TrackerConfig {
  double mahalanobis_threshold = 9.4877;
  double cosine_threshold = 0.2;
  /// Mahalanobis weight in the combined cost. When unset it is 0 for frames
  /// whose detections carry descriptors and 1 otherwise.
  std::optional<double> appearance_weight;
  int max_age = 30;
  int confirm_hits = 3;
  std::size_t gallery_capacity = 100;
  NoiseConfig noise;
};

enum class TrackEventKind { Created, Confirmed, Deleted };

struct TrackEvent {
  TrackEventKind kind;
  TrackId track_id;

  friend bool operator==(const TrackEvent&, const TrackEvent&) = default;
};

struct StepResult {
  std::vector<TrackMatch> matches;
  /// Per detection: the track it updated or created.
  std::vector<TrackId> detection_tracks;
  std::vector<TrackEvent> events;
};

/// Tracking-by-detection state machine. Single owner, frames in order.
///
/// Each step predicts every live track, solves one gated assignment over all
/// of them, updates matched tracks, ages the rest, and spawns tentative tracks
/// for unmatched detections. A tentative track is confirmed once it has
/// `confirm_hits` consecutive associations (its creating detection counts)
/// and deleted on its first miss. Confirmed tracks are deleted once
/// `frames_since_update` exceeds `max_age`.
class Tracker {
public:
  Tracker() : Tracker(TrackerConfig{}) {}
  explicit Tracker(const TrackerConfig& config);

  StepResult step(std::span<const DetectionInput> detections);

  /// Live tracks (tentative and confirmed), in creation order.
  const std::vector<Track>& tracks() const { return tracks_; }
  const TrackerConfig& config() const { return config_; }
  const KalmanFilter& filter() const { return filter_; }
  TrackId next_id() const { return next_id_; }

  /// Gate configuration for a frame, resolving the automatic weight.
  GateConfig gate_for(std::span<const DetectionInput> detections) const;

private:
  void add_descriptor(Track& track, const std::optional<Descriptor>& descriptor) const;

  TrackerConfig config_;
  KalmanFilter filter_;
  std::vector<Track> tracks_;
  TrackId next_id_ = 1;
};

}  // namespace distancing
