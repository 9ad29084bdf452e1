#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "distancing/kalman_filter.hpp"
#include "distancing/track.hpp"

namespace distancing {

/// Gates and blend weight for the track/detection cost.
struct GateConfig {
  /// Squared Mahalanobis gate; 95% chi-square quantile for 4 degrees of freedom.
  double mahalanobis_threshold = 9.4877;
  double cosine_threshold = 0.2;
  /// Weight of the Mahalanobis term in the combined cost.
  double weight = 0.0;
};

struct AssociationCost {
  double mahalanobis = 0.0;
  double cosine = 0.0;
  double combined = 0.0;
  bool admissible = false;
};

/// Smallest 1 - r . g over gallery entries g.
///
/// Throws ContractError on an empty gallery and ParameterError on a
/// dimension mismatch.
double cosine_distance(std::span<const Descriptor> gallery, const Descriptor& descriptor);
double cosine_distance(const std::deque<Descriptor>& gallery, const Descriptor& descriptor);

/// Admissible iff both metrics are strictly inside their gates.
AssociationCost gate_and_cost(double mahalanobis, double cosine, const GateConfig& gate);

struct DetectionInput {
  Measurement measurement;
  std::optional<Descriptor> descriptor;
};

struct TrackMatch {
  TrackId track_id = 0;
  std::size_t detection_index = 0;

  friend bool operator==(const TrackMatch&, const TrackMatch&) = default;
};

struct AssociationResult {
  std::vector<TrackMatch> matches;
  std::vector<TrackId> unmatched_tracks;
  std::vector<std::size_t> unmatched_detections;
  double total_cost = 0.0;
};

/// Dense tracks x detections table of gated costs, row-major.
class CostTable {
public:
  CostTable(std::size_t tracks, std::size_t detections)
      : tracks_(tracks), detections_(detections), cells_(tracks * detections) {}

  std::size_t tracks() const { return tracks_; }
  std::size_t detections() const { return detections_; }

  AssociationCost& at(std::size_t track, std::size_t detection) {
    return cells_[track * detections_ + detection];
  }
  const AssociationCost& at(std::size_t track, std::size_t detection) const {
    return cells_[track * detections_ + detection];
  }

private:
  std::size_t tracks_;
  std::size_t detections_;
  std::vector<AssociationCost> cells_;
};

/// d1/d2 for every pair. A detection without a descriptor, or a track with an
/// empty gallery, gets d2 = 0 and passes the appearance gate. Pairs already
/// outside the Mahalanobis gate skip the appearance lookup: their cosine and
/// combined cost are reported as +infinity.
CostTable build_cost_table(std::span<const Track> tracks, std::span<const DetectionInput> detections,
                           const KalmanFilter& filter, const GateConfig& gate);

/// Minimum-cost maximum matching over admissible cells. `track_ids[i]` names row i.
AssociationResult associate(const CostTable& table, std::span<const TrackId> track_ids);

AssociationResult associate(std::span<const Track> tracks,
                            std::span<const DetectionInput> detections, const KalmanFilter& filter,
                            const GateConfig& gate);

}  // namespace distancing
