#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <string_view>
#include <vector>

#include "distancing/kalman_filter.hpp"

namespace distancing {

using TrackId = std::uint64_t;

/// Appearance embedding. Stored unit-norm.
using Descriptor = std::vector<double>;

enum class TrackStatus { Tentative, Confirmed, Deleted };

std::string_view to_string(TrackStatus status);

struct Track {
  TrackId id = 0;
  KalmanState state;
  TrackStatus status = TrackStatus::Tentative;
  int hits = 0;
  int frames_since_update = 0;
  int age = 0;
  /// Most recent descriptors, oldest first.
  std::deque<Descriptor> gallery;

  bool is_confirmed() const { return status == TrackStatus::Confirmed; }
  bool is_tentative() const { return status == TrackStatus::Tentative; }
  BoundingBox box() const { return state.box(); }
};

}  // namespace distancing
