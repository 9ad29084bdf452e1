#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "distancing/geometry.hpp"
#include "distancing/report.hpp"
#include "distancing/track.hpp"

namespace distancing {

/// One line of a detection or ground-truth stream.
///
/// Wire form, one JSON object per line:
///   {"frame_id":int,"timestamp_ms":int,"x":num,"y":num,"w":num,"h":num,
///    "confidence":num,"descriptor":[num,...]?,"identity":int?}
/// `identity` is present on ground truth only.
struct DetectionRecord {
  FrameId frame_id = 0;
  TimestampMs timestamp_ms = 0;
  BoundingBox box;
  double confidence = 1.0;
  std::optional<Descriptor> descriptor;
  std::optional<std::int64_t> identity;

  friend bool operator==(const DetectionRecord&, const DetectionRecord&) = default;
};

/// Contiguous records sharing a frame id. The batch timestamp is the first record's.
struct FrameBatch {
  FrameId frame_id = 0;
  TimestampMs timestamp_ms = 0;
  std::vector<DetectionRecord> records;
};

struct ParseWarning {
  std::size_t line = 0;
  std::string message;
};

struct ParsedStream {
  std::vector<FrameBatch> batches;
  std::size_t skipped_lines = 0;
  std::vector<ParseWarning> warnings;
};

/// Parse and validate one record. Throws FormatError describing the defect.
/// Descriptors are rescaled to unit norm; a zero descriptor is a defect.
DetectionRecord parse_record(std::string_view line);

std::string serialize(const DetectionRecord& record);

/// Group a line-delimited stream into per-frame batches.
///
/// Blank lines are ignored. Malformed lines are skipped and reported as
/// warnings. A frame id lower than its predecessor, or a frame id that
/// reappears after another frame, throws FormatError.
ParsedStream parse_stream(std::istream& in);

/// Opens `path`; throws InputError if it cannot be read.
ParsedStream parse_stream_file(const std::string& path);

void write_records(std::ostream& out, const std::vector<DetectionRecord>& records);

std::string serialize(const FrameReport& report);
FrameReport parse_frame_report(std::string_view line);

std::string serialize(const ViolationEvent& event);
ViolationEvent parse_violation_event(std::string_view line);

std::string serialize(const OverlayRecord& overlay);
OverlayRecord parse_overlay(std::string_view line);

}  // namespace distancing
