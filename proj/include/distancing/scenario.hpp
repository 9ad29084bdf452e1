#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "distancing/records.hpp"

namespace distancing {

/// Synthetic pedestrian scene: boxes move at constant velocity and bounce off
/// the frame edges.
struct ScenarioConfig {
  double frame_width = 1280.0;
  double frame_height = 720.0;
  std::size_t person_count = 10;
  std::size_t frame_count = 200;
  /// Timestamp step between frames.
  std::int64_t frame_interval_ms = 40;
  double min_speed = 0.5;
  double max_speed = 3.0;
  double min_height = 80.0;
  double max_height = 160.0;
  double aspect = 0.4;
  /// Std of the Gaussian perturbation on x, y, w, h of every true detection.
  double noise_std = 0.0;
  double miss_rate = 0.0;
  /// Mean number of false positives per frame (Poisson).
  double false_positive_rate = 0.0;
  /// 0 disables descriptors.
  std::size_t descriptor_dim = 16;
  double descriptor_noise = 0.05;
  std::uint64_t seed = 1;
};

/// Throws ParameterError for out-of-range fields.
void validate(const ScenarioConfig& config);

struct Scenario {
  /// Truth records carry identities and confidence 1.
  std::vector<DetectionRecord> ground_truth;
  std::vector<DetectionRecord> detections;
  std::size_t missed = 0;
  std::size_t false_positives = 0;
};

/// Deterministic for a given config (single seeded generator, fixed draw order).
Scenario generate_scenario(const ScenarioConfig& config);

}  // namespace distancing
