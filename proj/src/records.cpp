#include "distancing/records.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "distancing/errors.hpp"

namespace distancing {

using Json = nlohmann::ordered_json;

namespace {

Json parse_object(std::string_view line) {
  Json j;
  try {
    j = Json::parse(line.begin(), line.end());
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("record is not a JSON object");
  return j;
}

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing field '") + key + "'");
  return *it;
}

std::int64_t integer_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw FormatError(std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

double number_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number()) throw FormatError(std::string("field '") + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw FormatError(std::string("field '") + key + "' must be finite");
  return x;
}

Json box_json(const BoundingBox& b) { return Json{{"x", b.x}, {"y", b.y}, {"w", b.w}, {"h", b.h}}; }

BoundingBox box_from(const Json& j) {
  return {number_field(j, "x"), number_field(j, "y"), number_field(j, "w"), number_field(j, "h")};
}

TrackStatus status_from(const std::string& s) {
  if (s == "tentative") return TrackStatus::Tentative;
  if (s == "confirmed") return TrackStatus::Confirmed;
  if (s == "deleted") return TrackStatus::Deleted;
  throw FormatError("unknown track status '" + s + "'");
}

Json stats_json(const ViolationStats& s) {
  return Json{{"n_g", s.groups},
              {"n_p", s.people},
              {"v_i", s.violation_index},
              {"estimated_violations", s.estimated_violations}};
}

}  // namespace

DetectionRecord parse_record(std::string_view line) {
  const Json j = parse_object(line);
  DetectionRecord r;
  r.frame_id = integer_field(j, "frame_id");
  r.timestamp_ms = integer_field(j, "timestamp_ms");
  r.box = box_from(j);
  if (!r.box.valid()) throw FormatError("box width and height must be positive");
  r.confidence = number_field(j, "confidence");
  if (r.confidence < 0.0 || r.confidence > 1.0) throw FormatError("confidence must be in [0, 1]");

  if (auto it = j.find("descriptor"); it != j.end() && !it->is_null()) {
    if (!it->is_array() || it->size() < 2) {
      throw FormatError("descriptor must be an array of at least 2 numbers");
    }
    Descriptor d;
    d.reserve(it->size());
    double norm2 = 0.0;
    for (const Json& v : *it) {
      if (!v.is_number()) throw FormatError("descriptor entries must be numbers");
      const double x = v.get<double>();
      if (!std::isfinite(x)) throw FormatError("descriptor entries must be finite");
      d.push_back(x);
      norm2 += x * x;
    }
    if (!(norm2 > 0.0)) throw FormatError("descriptor must be non-zero");
    const double norm = std::sqrt(norm2);
    if (std::abs(norm - 1.0) > 1e-12) {
      for (double& x : d) x /= norm;
    }
    r.descriptor = std::move(d);
  }
  if (auto it = j.find("identity"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer()) throw FormatError("identity must be an integer");
    r.identity = it->get<std::int64_t>();
  }
  return r;
}

std::string serialize(const DetectionRecord& r) {
  Json j{{"frame_id", r.frame_id}, {"timestamp_ms", r.timestamp_ms}, {"x", r.box.x},
         {"y", r.box.y},           {"w", r.box.w},                   {"h", r.box.h},
         {"confidence", r.confidence}};
  if (r.descriptor) j["descriptor"] = *r.descriptor;
  if (r.identity) j["identity"] = *r.identity;
  return j.dump();
}

ParsedStream parse_stream(std::istream& in) {
  ParsedStream out;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> descriptor_dim;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    DetectionRecord rec;
    try {
      rec = parse_record(line);
      if (rec.descriptor) {
        if (!descriptor_dim) descriptor_dim = rec.descriptor->size();
        if (rec.descriptor->size() != *descriptor_dim) {
          throw FormatError("descriptor dimension " + std::to_string(rec.descriptor->size()) +
                            " differs from stream dimension " + std::to_string(*descriptor_dim));
        }
      }
    } catch (const FormatError& e) {
      ++out.skipped_lines;
      out.warnings.push_back({line_no, e.what()});
      continue;
    }

    if (out.batches.empty() || rec.frame_id > out.batches.back().frame_id) {
      out.batches.push_back({rec.frame_id, rec.timestamp_ms, {}});
    } else if (rec.frame_id < out.batches.back().frame_id) {
      throw FormatError("line " + std::to_string(line_no) + ": frame_id " +
                        std::to_string(rec.frame_id) + " follows frame_id " +
                        std::to_string(out.batches.back().frame_id));
    }
    out.batches.back().records.push_back(std::move(rec));
  }
  if (in.bad()) throw InputError("read error in detection stream");
  return out;
}

ParsedStream parse_stream_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return parse_stream(in);
}

void write_records(std::ostream& out, const std::vector<DetectionRecord>& records) {
  for (const DetectionRecord& r : records) out << serialize(r) << '\n';
}

std::string serialize(const FrameReport& report) {
  Json tracks = Json::array();
  for (const TrackSummary& t : report.tracks) {
    Json e{{"id", t.id}};
    e.update(box_json(t.box));
    e["status"] = std::string(to_string(t.status));
    tracks.push_back(std::move(e));
  }
  Json groups = Json::array();
  for (const SocialGroup& g : report.groups) {
    groups.push_back(Json{{"members", g.members}, {"color_index", g.color_index}});
  }
  Json j{{"frame_id", report.frame_id},
         {"timestamp_ms", report.timestamp_ms},
         {"tracks", std::move(tracks)},
         {"groups", std::move(groups)},
         {"stats", stats_json(report.stats)},
         {"violation", report.violation}};
  return j.dump();
}

FrameReport parse_frame_report(std::string_view line) {
  const Json j = parse_object(line);
  FrameReport r;
  try {
    r.frame_id = integer_field(j, "frame_id");
    r.timestamp_ms = integer_field(j, "timestamp_ms");
    for (const Json& t : field(j, "tracks")) {
      r.tracks.push_back({t.at("id").get<TrackId>(), box_from(t),
                          status_from(t.at("status").get<std::string>())});
    }
    for (const Json& g : field(j, "groups")) {
      r.groups.push_back({g.at("members").get<std::vector<TrackId>>(), g.at("color_index").get<int>()});
    }
    const Json& s = field(j, "stats");
    r.stats.groups = s.at("n_g").get<std::size_t>();
    r.stats.people = s.at("n_p").get<std::size_t>();
    r.stats.violation_index = s.at("v_i").get<double>();
    r.stats.estimated_violations = s.at("estimated_violations").get<double>();
    r.violation = field(j, "violation").get<bool>();
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed frame report: ") + e.what());
  }
  return r;
}

std::string serialize(const ViolationEvent& e) {
  return Json{{"frame_id", e.frame_id},
              {"timestamp_ms", e.timestamp_ms},
              {"n_g", e.groups},
              {"n_p", e.people},
              {"v_i", e.violation_index}}
      .dump();
}

ViolationEvent parse_violation_event(std::string_view line) {
  const Json j = parse_object(line);
  try {
    return {integer_field(j, "frame_id"), integer_field(j, "timestamp_ms"),
            j.at("n_g").get<std::size_t>(), j.at("n_p").get<std::size_t>(),
            j.at("v_i").get<double>()};
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed violation event: ") + e.what());
  }
}

std::string serialize(const OverlayRecord& overlay) {
  Json entries = Json::array();
  for (const OverlayEntry& e : overlay.entries) {
    Json item{{"track_id", e.track_id}};
    item.update(box_json(e.box));
    item["color_index"] = e.color_index ? Json(*e.color_index) : Json(nullptr);
    entries.push_back(std::move(item));
  }
  return Json{{"frame_id", overlay.frame_id}, {"entries", std::move(entries)}}.dump();
}

OverlayRecord parse_overlay(std::string_view line) {
  const Json j = parse_object(line);
  OverlayRecord o;
  try {
    o.frame_id = integer_field(j, "frame_id");
    for (const Json& e : field(j, "entries")) {
      OverlayEntry entry{e.at("track_id").get<TrackId>(), box_from(e), std::nullopt};
      if (const Json& c = e.at("color_index"); !c.is_null()) entry.color_index = c.get<int>();
      o.entries.push_back(entry);
    }
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed overlay record: ") + e.what());
  }
  return o;
}

}  // namespace distancing
