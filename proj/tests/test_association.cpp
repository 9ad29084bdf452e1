#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "distancing/association.hpp"
#include "distancing/errors.hpp"
#include "distancing/linear_assignment.hpp"
#include "oracles.hpp"

using namespace distancing;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::vector<double>> to_rows(const Eigen::MatrixXd& m) {
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(m.rows()),
                                        std::vector<double>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m(r, c);
  return rows;
}

Eigen::MatrixXd random_costs(std::mt19937_64& rng, int rows, int cols, double forbid_prob) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = u(rng) < forbid_prob ? kInf : 10.0 * u(rng);
  return m;
}

Descriptor unit(std::initializer_list<double> v) {
  Descriptor d(v);
  double n = 0;
  for (double x : d) n += x * x;
  for (double& x : d) x /= std::sqrt(n);
  return d;
}

}  // namespace

TEST(SolveAssignment, EmptyMatrix) {
  const auto r = solve_assignment(Eigen::MatrixXd(0, 0));
  EXPECT_TRUE(r.matches.empty());
  const auto r2 = solve_assignment(Eigen::MatrixXd(0, 3));
  EXPECT_EQ(r2.unmatched_cols.size(), 3u);
}

TEST(SolveAssignment, TwoByTwoDiagonal) {
  Eigen::MatrixXd c(2, 2);
  c << 1, 10, 10, 1;
  const auto r = solve_assignment(c);
  ASSERT_EQ(r.matches.size(), 2u);
  EXPECT_EQ(r.matches[0], (std::pair<std::size_t, std::size_t>{0, 0}));
  EXPECT_EQ(r.matches[1], (std::pair<std::size_t, std::size_t>{1, 1}));
  EXPECT_DOUBLE_EQ(r.total_cost, 2.0);
}

TEST(SolveAssignment, PrefersMoreMatchesOverCheaperFewer) {
  // Row 0 alone would prefer column 0 (cost 0), but then row 1 is stranded.
  Eigen::MatrixXd c(2, 2);
  c << 0, 5, 1, kInf;
  const auto r = solve_assignment(c);
  EXPECT_EQ(r.matches.size(), 2u);
  EXPECT_DOUBLE_EQ(r.total_cost, 6.0);
}

TEST(SolveAssignment, AllForbidden) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Constant(3, 2, kInf);
  const auto r = solve_assignment(c);
  EXPECT_TRUE(r.matches.empty());
  EXPECT_EQ(r.unmatched_rows.size(), 3u);
  EXPECT_EQ(r.unmatched_cols.size(), 2u);
}

TEST(SolveAssignment, RejectsNegativeCost) {
  Eigen::MatrixXd c(1, 1);
  c << -1.0;
  EXPECT_THROW(solve_assignment(c), ParameterError);
}

TEST(SolveAssignment, MatchesBruteForceOnRandomRectangles) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(0, 7);
  for (int trial = 0; trial < 300; ++trial) {
    const int rows = dim(rng), cols = dim(rng);
    const Eigen::MatrixXd c = random_costs(rng, rows, cols, trial % 3 == 0 ? 0.0 : 0.35);
    const auto got = solve_assignment(c);
    const auto want = oracle::brute_force_assignment(to_rows(c));
    EXPECT_EQ(got.matches.size(), want.cardinality) << "trial " << trial;
    EXPECT_EQ(got.total_cost, want.total_cost) << "trial " << trial;

    // partial bijection
    std::set<std::size_t> rs, cs;
    for (auto [r, col] : got.matches) {
      EXPECT_TRUE(rs.insert(r).second);
      EXPECT_TRUE(cs.insert(col).second);
    }
    EXPECT_EQ(got.matches.size() + got.unmatched_rows.size(), static_cast<std::size_t>(rows));
    EXPECT_EQ(got.matches.size() + got.unmatched_cols.size(), static_cast<std::size_t>(cols));
  }
}

TEST(CosineDistance, Examples) {
  const Descriptor r = unit({1, 2, 3});
  const Descriptor self[] = {r};
  EXPECT_NEAR(cosine_distance(self, r), 0.0, 1e-15);

  Descriptor neg = r;
  for (double& x : neg) x = -x;
  const Descriptor anti[] = {neg};
  EXPECT_NEAR(cosine_distance(anti, r), 2.0, 1e-15);

  const Descriptor basis[] = {{1, 0, 0}, {0, 1, 0}};
  const Descriptor diag{std::sqrt(0.5), std::sqrt(0.5), 0};
  EXPECT_NEAR(cosine_distance(basis, diag), 0.2928932188134524, 1e-12);
}

TEST(CosineDistance, Errors) {
  EXPECT_THROW(cosine_distance(std::span<const Descriptor>{}, Descriptor{1, 0}), ContractError);
  const Descriptor g[] = {{1, 0, 0}};
  EXPECT_THROW(cosine_distance(g, Descriptor{1, 0}), ParameterError);
}

TEST(GateAndCost, Examples) {
  const GateConfig gate{9.4877, 0.2, 0.5};
  const AssociationCost zero = gate_and_cost(0, 0, gate);
  EXPECT_TRUE(zero.admissible);
  EXPECT_DOUBLE_EQ(zero.combined, 0.0);

  EXPECT_FALSE(gate_and_cost(9.4877, 0.0, gate).admissible);
  EXPECT_FALSE(gate_and_cost(0.0, 0.2, gate).admissible);
  EXPECT_TRUE(gate_and_cost(9.48, 0.19, gate).admissible);

  const AssociationCost c = gate_and_cost(2.0, 0.4, {100.0, 1.0, 0.5});
  EXPECT_DOUBLE_EQ(c.combined, 1.2);
  EXPECT_TRUE(c.admissible);
}

TEST(Associate, SinglePair) {
  CostTable t(1, 1);
  t.at(0, 0) = gate_and_cost(1.0, 0.1, {});
  const TrackId ids[] = {42};
  const auto r = associate(t, ids);
  ASSERT_EQ(r.matches.size(), 1u);
  EXPECT_EQ(r.matches[0], (TrackMatch{42, 0}));
  EXPECT_TRUE(r.unmatched_tracks.empty());
  EXPECT_TRUE(r.unmatched_detections.empty());
}

TEST(Associate, TwoByTwoTableFromCosts) {
  const GateConfig gate{100.0, 100.0, 1.0};
  CostTable t(2, 2);
  t.at(0, 0) = gate_and_cost(1, 0, gate);
  t.at(0, 1) = gate_and_cost(10, 0, gate);
  t.at(1, 0) = gate_and_cost(10, 0, gate);
  t.at(1, 1) = gate_and_cost(1, 0, gate);
  const TrackId ids[] = {7, 9};
  const auto r = associate(t, ids);
  ASSERT_EQ(r.matches.size(), 2u);
  EXPECT_EQ(r.matches[0], (TrackMatch{7, 0}));
  EXPECT_EQ(r.matches[1], (TrackMatch{9, 1}));
  EXPECT_DOUBLE_EQ(r.total_cost, 2.0);
}

TEST(Associate, ShrinkingGatesNeverAddsMatches) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> d1(0.0, 20.0), d2(0.0, 1.0), shrink(0.3, 1.0);
  std::uniform_int_distribution<int> dim(1, 7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = static_cast<std::size_t>(dim(rng));
    const std::size_t cols = static_cast<std::size_t>(dim(rng));
    std::vector<std::pair<double, double>> raw(rows * cols);
    for (auto& p : raw) p = {d1(rng), d2(rng)};

    const GateConfig wide{9.4877, 0.5, 0.3};
    const GateConfig narrow{wide.mahalanobis_threshold * shrink(rng),
                            wide.cosine_threshold * shrink(rng), 0.3};
    CostTable tw(rows, cols), tn(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        const auto [a, b] = raw[i * cols + j];
        tw.at(i, j) = gate_and_cost(a, b, wide);
        tn.at(i, j) = gate_and_cost(a, b, narrow);
        if (tn.at(i, j).admissible) EXPECT_TRUE(tw.at(i, j).admissible);
      }
    std::vector<TrackId> ids(rows);
    std::iota(ids.begin(), ids.end(), TrackId{1});
    EXPECT_LE(associate(tn, ids).matches.size(), associate(tw, ids).matches.size());
  }
}

TEST(Associate, FromTracksUsesKalmanAndAppearance) {
  const KalmanFilter kf;
  Track a;
  a.id = 1;
  a.state = kf.predict(kf.initiate({100, 100, 0.5, 80}));
  a.gallery.push_back({1, 0});
  Track b;
  b.id = 2;
  b.state = kf.predict(kf.initiate({300, 100, 0.5, 80}));
  b.gallery.push_back({0, 1});
  const Track tracks[] = {a, b};

  const DetectionInput dets[] = {{{301, 101, 0.5, 80}, Descriptor{0, 1}},
                                 {{101, 99, 0.5, 80}, Descriptor{1, 0}},
                                 {{900, 600, 0.5, 80}, Descriptor{1, 0}}};
  const auto r = associate(tracks, dets, kf, GateConfig{9.4877, 0.2, 0.0});
  ASSERT_EQ(r.matches.size(), 2u);
  EXPECT_EQ(r.matches[0], (TrackMatch{1, 1}));
  EXPECT_EQ(r.matches[1], (TrackMatch{2, 0}));
  ASSERT_EQ(r.unmatched_detections.size(), 1u);
  EXPECT_EQ(r.unmatched_detections[0], 2u);
}

TEST(Associate, MissingDescriptorPassesAppearanceGate) {
  const KalmanFilter kf;
  Track a;
  a.id = 5;
  a.state = kf.predict(kf.initiate({100, 100, 0.5, 80}));
  a.gallery.push_back({1, 0});
  const Track tracks[] = {a};
  const DetectionInput dets[] = {{{100, 100, 0.5, 80}, std::nullopt}};
  const CostTable t = build_cost_table(tracks, dets, kf, GateConfig{9.4877, 0.2, 1.0});
  EXPECT_DOUBLE_EQ(t.at(0, 0).cosine, 0.0);
  EXPECT_TRUE(t.at(0, 0).admissible);
}

TEST(Associate, PairsOutsideMotionGateSkipAppearance) {
  const KalmanFilter kf;
  Track a;
  a.id = 1;
  a.state = kf.predict(kf.initiate({100, 100, 0.5, 80}));
  a.gallery.push_back({1, 0});
  const Track tracks[] = {a};
  const DetectionInput dets[] = {{{900, 600, 0.5, 80}, Descriptor{1, 0}},
                                 {{101, 100, 0.5, 80}, Descriptor{1, 0}}};
  const CostTable t = build_cost_table(tracks, dets, kf, GateConfig{9.4877, 0.2, 0.0});
  EXPECT_FALSE(t.at(0, 0).admissible);
  EXPECT_EQ(t.at(0, 0).cosine, kInf);
  EXPECT_GT(t.at(0, 0).mahalanobis, 9.4877);
  EXPECT_TRUE(t.at(0, 1).admissible);
  EXPECT_NEAR(t.at(0, 1).cosine, 0.0, 1e-15);
  EXPECT_NEAR(t.at(0, 1).mahalanobis, kf.mahalanobis(a.state, dets[1].measurement), 1e-12);
}
