#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "distancing/geometry.hpp"
#include "distancing/proximity.hpp"
#include "distancing/track.hpp"

namespace distancing {

using FrameId = std::int64_t;
using TimestampMs = std::int64_t;

struct TrackSummary {
  TrackId id = 0;
  BoundingBox box;
  TrackStatus status = TrackStatus::Tentative;

  friend bool operator==(const TrackSummary&, const TrackSummary&) = default;
};

/// Analytics for one frame.
struct FrameReport {
  FrameId frame_id = 0;
  TimestampMs timestamp_ms = 0;
  std::vector<TrackSummary> tracks;
  std::vector<SocialGroup> groups;
  ViolationStats stats;
  bool violation = false;

  friend bool operator==(const FrameReport&, const FrameReport&) = default;
};

/// Entry in the violation log; one per frame with at least one group.
struct ViolationEvent {
  FrameId frame_id = 0;
  TimestampMs timestamp_ms = 0;
  std::size_t groups = 0;
  std::size_t people = 0;
  double violation_index = 0.0;

  friend bool operator==(const ViolationEvent&, const ViolationEvent&) = default;
};

FrameReport frame_report(std::span<const TrackSummary> tracks, std::span<const SocialGroup> groups,
                         const ViolationStats& stats, FrameId frame_id, TimestampMs timestamp_ms);

std::optional<ViolationEvent> violation_event(const FrameReport& report);

struct OverlayEntry {
  TrackId track_id = 0;
  BoundingBox box;
  /// Group color, or nullopt for people outside every group.
  std::optional<int> color_index;

  friend bool operator==(const OverlayEntry&, const OverlayEntry&) = default;
};

struct OverlayRecord {
  FrameId frame_id = 0;
  std::vector<OverlayEntry> entries;

  friend bool operator==(const OverlayRecord&, const OverlayRecord&) = default;
};

/// One entry per reported track; grouped people carry their group's color.
OverlayRecord emit_overlay(const FrameReport& report);

}  // namespace distancing
