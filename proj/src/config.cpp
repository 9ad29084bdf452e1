#include "distancing/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "distancing/errors.hpp"

namespace distancing {

using Json = nlohmann::ordered_json;

namespace {

// Reads known keys from one JSON object and rejects whatever is left over.
class ObjectReader {
public:
  ObjectReader(const Json& j, std::string path) : json_(j), path_(std::move(path)) {
    if (!j.is_object()) throw ConfigError(where() + " must be an object");
  }

  template <typename T>
  void read(const char* key, T& out) {
    auto it = json_.find(key);
    seen_.insert(key);
    if (it == json_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const Json::exception&) {
      throw ConfigError(where(key) + " has the wrong type");
    }
  }

  template <typename T>
  void read_optional(const char* key, std::optional<T>& out) {
    auto it = json_.find(key);
    seen_.insert(key);
    if (it == json_.end()) return;
    if (it->is_null()) {
      out.reset();
      return;
    }
    T value{};
    read(key, value);
    out = value;
  }

  const Json* child(const char* key) {
    seen_.insert(key);
    auto it = json_.find(key);
    return it == json_.end() ? nullptr : &*it;
  }

  std::string where(const char* key = nullptr) const {
    std::string p = path_.empty() ? "config" : path_;
    if (key) p += std::string(".") + key;
    return p;
  }

  void finish() const {
    for (auto it = json_.begin(); it != json_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError("unknown key '" + where(it.key().c_str()) + "'");
    }
  }

private:
  const Json& json_;
  std::string path_;
  std::set<std::string, std::less<>> seen_;
};

DepthFormula depth_formula_from(const std::string& s) {
  if (s == "printed") return DepthFormula::Printed;
  if (s == "grouped_sum") return DepthFormula::GroupedSum;
  throw ConfigError("proximity.depth_formula must be 'printed' or 'grouped_sum'");
}

void read_noise(const Json& j, NoiseConfig& n) {
  ObjectReader r(j, "tracker.noise");
  r.read("position_weight", n.position_weight);
  r.read("velocity_weight", n.velocity_weight);
  r.read("measurement_weight", n.measurement_weight);
  r.read("initial_velocity_ratio", n.initial_velocity_ratio);
  r.read("aspect_std", n.aspect_std);
  r.read("aspect_velocity_std", n.aspect_velocity_std);
  r.read("aspect_measurement_std", n.aspect_measurement_std);
  r.finish();
}

void read_tracker(const Json& j, TrackerConfig& t) {
  ObjectReader r(j, "tracker");
  r.read("mahalanobis_threshold", t.mahalanobis_threshold);
  r.read("cosine_threshold", t.cosine_threshold);
  r.read_optional("appearance_weight", t.appearance_weight);
  r.read("max_age", t.max_age);
  r.read("confirm_hits", t.confirm_hits);
  r.read("gallery_capacity", t.gallery_capacity);
  if (const Json* noise = r.child("noise")) read_noise(*noise, t.noise);
  r.finish();
}

void read_proximity(const Json& j, ProximityConfig& p) {
  ObjectReader r(j, "proximity");
  r.read("threshold_min", p.thresholds.near_top);
  r.read("threshold_max", p.thresholds.near_bottom);
  r.read("axis_scale", p.axis_scale);
  std::string formula = p.depth_formula == DepthFormula::Printed ? "printed" : "grouped_sum";
  r.read("depth_formula", formula);
  p.depth_formula = depth_formula_from(formula);
  r.finish();
}

void read_output(const Json& j, OutputPaths& o) {
  ObjectReader r(j, "output");
  r.read("report_path", o.report_path);
  r.read("event_log_path", o.event_log_path);
  r.read("overlay_path", o.overlay_path);
  r.read("summary_path", o.summary_path);
  r.finish();
}

bool positive(double x) { return x > 0.0 && std::isfinite(x); }
bool non_negative(double x) { return x >= 0.0 && std::isfinite(x); }

}  // namespace

void validate(const PipelineConfig& c) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(positive(c.frame_width) && positive(c.frame_height),
          "frame_width and frame_height must be positive");
  require(c.confidence_threshold >= 0.0 && c.confidence_threshold <= 1.0,
          "confidence_threshold must be in [0, 1]");

  const TrackerConfig& t = c.tracker;
  require(positive(t.mahalanobis_threshold), "tracker.mahalanobis_threshold must be positive");
  require(positive(t.cosine_threshold), "tracker.cosine_threshold must be positive");
  require(!t.appearance_weight || (*t.appearance_weight >= 0.0 && *t.appearance_weight <= 1.0),
          "tracker.appearance_weight must be in [0, 1] or null");
  require(t.max_age >= 0, "tracker.max_age must be non-negative");
  require(t.confirm_hits >= 1, "tracker.confirm_hits must be at least 1");
  require(t.gallery_capacity >= 1, "tracker.gallery_capacity must be at least 1");

  const NoiseConfig& n = t.noise;
  require(positive(n.position_weight) && positive(n.velocity_weight),
          "tracker.noise position and velocity weights must be positive");
  require(non_negative(n.measurement_weight) && non_negative(n.aspect_measurement_std),
          "tracker.noise measurement terms must be non-negative");
  require(positive(n.initial_velocity_ratio) && positive(n.aspect_std) &&
              positive(n.aspect_velocity_std),
          "tracker.noise aspect terms and initial_velocity_ratio must be positive");

  const ProximityConfig& p = c.proximity;
  require(positive(p.thresholds.near_top) && p.thresholds.near_bottom >= p.thresholds.near_top &&
              std::isfinite(p.thresholds.near_bottom),
          "proximity thresholds need 0 < threshold_min <= threshold_max");
  for (double s : p.axis_scale) require(positive(s), "proximity.axis_scale entries must be positive");
}

PipelineConfig parse_config(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }

  PipelineConfig c;
  ObjectReader r(j, "");
  r.read("frame_width", c.frame_width);
  r.read("frame_height", c.frame_height);
  r.read("confidence_threshold", c.confidence_threshold);
  if (const Json* t = r.child("tracker")) read_tracker(*t, c.tracker);
  if (const Json* p = r.child("proximity")) read_proximity(*p, c.proximity);
  if (const Json* o = r.child("output")) read_output(*o, c.output);
  r.finish();

  validate(c);
  return c;
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize(const PipelineConfig& c) {
  const NoiseConfig& n = c.tracker.noise;
  Json noise{{"position_weight", n.position_weight},
             {"velocity_weight", n.velocity_weight},
             {"measurement_weight", n.measurement_weight},
             {"initial_velocity_ratio", n.initial_velocity_ratio},
             {"aspect_std", n.aspect_std},
             {"aspect_velocity_std", n.aspect_velocity_std},
             {"aspect_measurement_std", n.aspect_measurement_std}};
  Json tracker{{"mahalanobis_threshold", c.tracker.mahalanobis_threshold},
               {"cosine_threshold", c.tracker.cosine_threshold},
               {"appearance_weight", c.tracker.appearance_weight
                                         ? Json(*c.tracker.appearance_weight)
                                         : Json(nullptr)},
               {"max_age", c.tracker.max_age},
               {"confirm_hits", c.tracker.confirm_hits},
               {"gallery_capacity", c.tracker.gallery_capacity},
               {"noise", std::move(noise)}};
  Json proximity{
      {"threshold_min", c.proximity.thresholds.near_top},
      {"threshold_max", c.proximity.thresholds.near_bottom},
      {"axis_scale", c.proximity.axis_scale},
      {"depth_formula",
       c.proximity.depth_formula == DepthFormula::Printed ? "printed" : "grouped_sum"}};
  Json output{{"report_path", c.output.report_path},
              {"event_log_path", c.output.event_log_path},
              {"overlay_path", c.output.overlay_path},
              {"summary_path", c.output.summary_path}};
  Json j{{"frame_width", c.frame_width},
         {"frame_height", c.frame_height},
         {"confidence_threshold", c.confidence_threshold},
         {"tracker", std::move(tracker)},
         {"proximity", std::move(proximity)},
         {"output", std::move(output)}};
  return j.dump(2);
}

}  // namespace distancing
