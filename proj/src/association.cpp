#include "distancing/association.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "distancing/errors.hpp"
#include "distancing/linear_assignment.hpp"

namespace distancing {

namespace {

template <typename Range>
double min_cosine(const Range& gallery, const Descriptor& descriptor) {
  if (gallery.empty()) {
    throw ContractError("cosine_distance: gallery must not be empty");
  }
  double best = std::numeric_limits<double>::infinity();
  for (const Descriptor& g : gallery) {
    if (g.size() != descriptor.size()) {
      throw ParameterError("cosine_distance: descriptor dimension " +
                           std::to_string(descriptor.size()) + " does not match gallery dimension " +
                           std::to_string(g.size()));
    }
    const double dot = std::inner_product(g.begin(), g.end(), descriptor.begin(), 0.0);
    best = std::min(best, 1.0 - dot);
  }
  return std::clamp(best, 0.0, 2.0);
}

}  // namespace

std::string_view to_string(TrackStatus status) {
  switch (status) {
    case TrackStatus::Tentative:
      return "tentative";
    case TrackStatus::Confirmed:
      return "confirmed";
    case TrackStatus::Deleted:
      return "deleted";
  }
  return "unknown";
}

double cosine_distance(std::span<const Descriptor> gallery, const Descriptor& descriptor) {
  return min_cosine(gallery, descriptor);
}

double cosine_distance(const std::deque<Descriptor>& gallery, const Descriptor& descriptor) {
  return min_cosine(gallery, descriptor);
}

AssociationCost gate_and_cost(double mahalanobis, double cosine, const GateConfig& gate) {
  AssociationCost c;
  c.mahalanobis = mahalanobis;
  c.cosine = cosine;
  c.combined = gate.weight * mahalanobis + (1.0 - gate.weight) * cosine;
  c.admissible = mahalanobis < gate.mahalanobis_threshold && cosine < gate.cosine_threshold;
  return c;
}

CostTable build_cost_table(std::span<const Track> tracks, std::span<const DetectionInput> detections,
                           const KalmanFilter& filter, const GateConfig& gate) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  CostTable table(tracks.size(), detections.size());
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    const Track& track = tracks[i];
    const Projection proj = filter.project(track.state);
    const Eigen::LLT<MeasurementCovariance> llt(proj.covariance);
    if (llt.info() != Eigen::Success) {
      throw NumericalError("mahalanobis: covariance is not positive definite");
    }
    for (std::size_t j = 0; j < detections.size(); ++j) {
      const DetectionInput& det = detections[j];
      const MeasurementVector z = llt.matrixL().solve(det.measurement.vector() - proj.mean);
      const double d1 = z.squaredNorm();
      if (!(d1 < gate.mahalanobis_threshold)) {
        table.at(i, j) = {d1, kInf, kInf, false};
        continue;
      }
      double d2 = 0.0;
      if (det.descriptor && !track.gallery.empty()) {
        d2 = cosine_distance(track.gallery, *det.descriptor);
      }
      table.at(i, j) = gate_and_cost(d1, d2, gate);
    }
  }
  return table;
}

AssociationResult associate(const CostTable& table, std::span<const TrackId> track_ids) {
  if (track_ids.size() != table.tracks()) {
    throw ParameterError("associate: track id count does not match cost table rows");
  }
  const auto rows = static_cast<Eigen::Index>(table.tracks());
  const auto cols = static_cast<Eigen::Index>(table.detections());
  Eigen::MatrixXd cost(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const AssociationCost& cell =
          table.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      cost(r, c) = cell.admissible ? cell.combined : std::numeric_limits<double>::infinity();
    }
  }

  const AssignmentResult solved = solve_assignment(cost);
  AssociationResult out;
  out.total_cost = solved.total_cost;
  for (const auto& [row, col] : solved.matches) {
    out.matches.push_back({track_ids[row], col});
  }
  for (std::size_t row : solved.unmatched_rows) {
    out.unmatched_tracks.push_back(track_ids[row]);
  }
  out.unmatched_detections = solved.unmatched_cols;
  return out;
}

AssociationResult associate(std::span<const Track> tracks,
                            std::span<const DetectionInput> detections, const KalmanFilter& filter,
                            const GateConfig& gate) {
  std::vector<TrackId> ids;
  ids.reserve(tracks.size());
  for (const Track& t : tracks) ids.push_back(t.id);
  return associate(build_cost_table(tracks, detections, filter, gate), ids);
}

}  // namespace distancing
