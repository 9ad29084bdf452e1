#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "distancing/config.hpp"
#include "distancing/records.hpp"
#include "distancing/report.hpp"
#include "distancing/tracker.hpp"

namespace distancing {

struct RunSummary {
  std::size_t total_frames = 0;
  std::size_t violation_frames = 0;
  std::size_t skipped_lines = 0;
  std::size_t tracks_created = 0;
  double max_violation_index = 0.0;
  /// Mean v_i over violation frames only; 0 when there are none.
  double mean_violation_index = 0.0;

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

std::string serialize(const RunSummary& summary);

/// Frame-ordered detection -> tracking -> proximity processing.
///
/// Every live track is reported, but only confirmed tracks that were
/// associated in the current frame take part in grouping.
class Pipeline {
public:
  explicit Pipeline(const PipelineConfig& config);

  /// Process the next frame. Frame ids must increase between calls; analytic
  /// failures are rethrown as FrameError naming the frame.
  FrameReport process(const FrameBatch& batch);

  const RunSummary& summary() const { return summary_; }
  const Tracker& tracker() const { return tracker_; }
  const PipelineConfig& config() const { return config_; }

private:
  FrameReport analyze(const FrameBatch& batch);

  PipelineConfig config_;
  Tracker tracker_;
  RunSummary summary_;
  double violation_index_sum_ = 0.0;
  bool started_ = false;
  FrameId last_frame_ = 0;
};

/// Where `run` writes. Null streams are skipped.
struct RunSinks {
  std::ostream* reports = nullptr;
  std::ostream* events = nullptr;
  std::ostream* overlay = nullptr;
  /// One line per skipped input line.
  std::ostream* warnings = nullptr;
};

/// Parse `source`, process every frame, and stream reports, violation events
/// and overlay records as JSON lines. Malformed lines are counted in the
/// summary; a non-monotone frame id throws FormatError.
RunSummary run(const PipelineConfig& config, std::istream& source, const RunSinks& sinks);

}  // namespace distancing
