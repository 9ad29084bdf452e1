#include "distancing/tracker.hpp"

#include <algorithm>

#include "distancing/errors.hpp"

namespace distancing {

Tracker::Tracker(const TrackerConfig& config) : config_(config), filter_(config.noise) {
  if (!(config.mahalanobis_threshold > 0.0) || !(config.cosine_threshold > 0.0)) {
    throw ParameterError("tracker: gate thresholds must be positive");
  }
  if (config.appearance_weight &&
      !(*config.appearance_weight >= 0.0 && *config.appearance_weight <= 1.0)) {
    throw ParameterError("tracker: appearance_weight must be in [0, 1]");
  }
  if (config.max_age < 0 || config.confirm_hits < 1 || config.gallery_capacity == 0) {
    throw ParameterError("tracker: max_age >= 0, confirm_hits >= 1, gallery_capacity >= 1 required");
  }
}

GateConfig Tracker::gate_for(std::span<const DetectionInput> detections) const {
  GateConfig gate{config_.mahalanobis_threshold, config_.cosine_threshold, 1.0};
  if (config_.appearance_weight) {
    gate.weight = *config_.appearance_weight;
  } else {
    const bool has_descriptors = std::any_of(detections.begin(), detections.end(),
                                             [](const DetectionInput& d) { return d.descriptor; });
    gate.weight = has_descriptors ? 0.0 : 1.0;
  }
  return gate;
}

void Tracker::add_descriptor(Track& track, const std::optional<Descriptor>& descriptor) const {
  if (!descriptor) return;
  track.gallery.push_back(*descriptor);
  while (track.gallery.size() > config_.gallery_capacity) {
    track.gallery.pop_front();
  }
}

StepResult Tracker::step(std::span<const DetectionInput> detections) {
  StepResult result;

  for (Track& t : tracks_) {
    t.state = filter_.predict(t.state);
    ++t.age;
    ++t.frames_since_update;
  }

  const AssociationResult assoc = associate(tracks_, detections, filter_, gate_for(detections));
  result.matches = assoc.matches;
  result.detection_tracks.assign(detections.size(), 0);

  // Tracks are stored in ascending id order, so ids can be located by search.
  auto find_track = [this](TrackId id) -> Track& {
    auto it = std::lower_bound(tracks_.begin(), tracks_.end(), id,
                               [](const Track& t, TrackId v) { return t.id < v; });
    return *it;
  };

  for (const TrackMatch& m : assoc.matches) {
    Track& t = find_track(m.track_id);
    const DetectionInput& det = detections[m.detection_index];
    result.detection_tracks[m.detection_index] = t.id;
    t.state = filter_.update(t.state, det.measurement);
    t.frames_since_update = 0;
    ++t.hits;
    add_descriptor(t, det.descriptor);
    if (t.is_tentative() && t.hits >= config_.confirm_hits) {
      t.status = TrackStatus::Confirmed;
      result.events.push_back({TrackEventKind::Confirmed, t.id});
    }
  }

  for (TrackId id : assoc.unmatched_tracks) {
    Track& t = find_track(id);
    if (t.is_tentative() || t.frames_since_update > config_.max_age) {
      t.status = TrackStatus::Deleted;
      result.events.push_back({TrackEventKind::Deleted, t.id});
    }
  }

  std::erase_if(tracks_, [](const Track& t) { return t.status == TrackStatus::Deleted; });

  for (std::size_t j : assoc.unmatched_detections) {
    const DetectionInput& det = detections[j];
    Track t;
    t.id = next_id_++;
    result.detection_tracks[j] = t.id;
    t.state = filter_.initiate(det.measurement);
    t.hits = 1;
    t.age = 1;
    add_descriptor(t, det.descriptor);
    if (t.hits >= config_.confirm_hits) {
      t.status = TrackStatus::Confirmed;
    }
    result.events.push_back({TrackEventKind::Created, t.id});
    if (t.is_confirmed()) {
      result.events.push_back({TrackEventKind::Confirmed, t.id});
    }
    tracks_.push_back(std::move(t));
  }

  return result;
}

}  // namespace distancing
