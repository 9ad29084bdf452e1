#include "distancing/report.hpp"

#include <unordered_map>

namespace distancing {

FrameReport frame_report(std::span<const TrackSummary> tracks, std::span<const SocialGroup> groups,
                         const ViolationStats& stats, FrameId frame_id, TimestampMs timestamp_ms) {
  FrameReport r;
  r.frame_id = frame_id;
  r.timestamp_ms = timestamp_ms;
  r.tracks.assign(tracks.begin(), tracks.end());
  r.groups.assign(groups.begin(), groups.end());
  r.stats = stats;
  r.violation = stats.groups >= 1;
  return r;
}

std::optional<ViolationEvent> violation_event(const FrameReport& report) {
  if (!report.violation) return std::nullopt;
  return ViolationEvent{report.frame_id, report.timestamp_ms, report.stats.groups,
                        report.stats.people, report.stats.violation_index};
}

OverlayRecord emit_overlay(const FrameReport& report) {
  std::unordered_map<TrackId, int> color_of;
  for (const SocialGroup& g : report.groups) {
    for (TrackId id : g.members) color_of[id] = g.color_index;
  }

  OverlayRecord overlay;
  overlay.frame_id = report.frame_id;
  overlay.entries.reserve(report.tracks.size());
  for (const TrackSummary& t : report.tracks) {
    OverlayEntry e{t.id, t.box, std::nullopt};
    if (auto it = color_of.find(t.id); it != color_of.end()) e.color_index = it->second;
    overlay.entries.push_back(e);
  }
  return overlay;
}

}  // namespace distancing
