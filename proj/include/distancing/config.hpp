#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "distancing/geometry.hpp"
#include "distancing/proximity.hpp"
#include "distancing/tracker.hpp"

namespace distancing {

struct ProximityConfig {
  ThresholdBounds thresholds;
  AxisScale axis_scale = kUnitScale;
  DepthFormula depth_formula = DepthFormula::Printed;
};

struct OutputPaths {
  std::string report_path;
  std::string event_log_path;
  std::string overlay_path;
  std::string summary_path;
};

/// Everything `run` needs. Loaded from a JSON document whose keys mirror
/// these fields; omitted keys keep their defaults and unknown keys are errors.
struct PipelineConfig {
  double frame_width = 1280.0;
  double frame_height = 720.0;
  double confidence_threshold = 0.5;
  TrackerConfig tracker;
  ProximityConfig proximity;
  OutputPaths output;
};

/// Throws ConfigError if any field is outside its documented range.
void validate(const PipelineConfig& config);

/// Parse and validate. Throws ConfigError.
PipelineConfig parse_config(std::string_view text);
PipelineConfig load_config(const std::string& path);

/// Canonical JSON form with every key present.
std::string serialize(const PipelineConfig& config);

}  // namespace distancing
