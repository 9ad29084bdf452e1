#include <gtest/gtest.h>

#include "distancing/errors.hpp"
#include "distancing/scenario.hpp"

using namespace distancing;

TEST(Scenario, NoiselessDetectionsEqualTruth) {
  ScenarioConfig c;
  c.frame_count = 50;
  const Scenario s = generate_scenario(c);
  ASSERT_EQ(s.ground_truth.size(), c.person_count * c.frame_count);
  ASSERT_EQ(s.detections.size(), s.ground_truth.size());
  EXPECT_EQ(s.missed, 0u);
  EXPECT_EQ(s.false_positives, 0u);
  for (std::size_t i = 0; i < s.detections.size(); ++i) {
    EXPECT_EQ(s.detections[i].box, s.ground_truth[i].box);
    EXPECT_EQ(s.detections[i].frame_id, s.ground_truth[i].frame_id);
    EXPECT_GE(s.detections[i].confidence, 0.6);
    ASSERT_TRUE(s.detections[i].descriptor);
    EXPECT_EQ(s.detections[i].descriptor->size(), c.descriptor_dim);
  }
}

TEST(Scenario, BoxesStayInsideTheFrame) {
  ScenarioConfig c;
  c.frame_count = 500;
  c.max_speed = 12.0;
  for (const DetectionRecord& r : generate_scenario(c).ground_truth) {
    EXPECT_GE(r.box.x, -1e-9);
    EXPECT_GE(r.box.y, -1e-9);
    EXPECT_LE(r.box.right(), c.frame_width + 1e-9);
    EXPECT_LE(r.box.bottom(), c.frame_height + 1e-9);
  }
}

TEST(Scenario, FramesAndTimestamps) {
  ScenarioConfig c;
  c.frame_count = 5;
  c.frame_interval_ms = 33;
  const Scenario s = generate_scenario(c);
  for (const DetectionRecord& r : s.ground_truth) EXPECT_EQ(r.timestamp_ms, r.frame_id * 33);
  EXPECT_EQ(s.ground_truth.front().frame_id, 0);
  EXPECT_EQ(s.ground_truth.back().frame_id, 4);
}

TEST(Scenario, SameSeedSameOutput) {
  ScenarioConfig c;
  c.noise_std = 2.0;
  c.miss_rate = 0.1;
  c.false_positive_rate = 0.5;
  const Scenario a = generate_scenario(c), b = generate_scenario(c);
  EXPECT_EQ(a.detections, b.detections);
  EXPECT_EQ(a.ground_truth, b.ground_truth);
  c.seed = 2;
  EXPECT_NE(generate_scenario(c).detections, a.detections);
}

TEST(Scenario, MissRateIsHonoured) {
  ScenarioConfig c;
  c.person_count = 50;
  c.frame_count = 200;  // 10^4 opportunities
  c.miss_rate = 0.5;
  c.descriptor_dim = 0;
  const Scenario s = generate_scenario(c);
  const double rate = static_cast<double>(s.missed) / 1e4;
  EXPECT_NEAR(rate, 0.5, 0.02);
  EXPECT_EQ(s.detections.size() + s.missed, 10000u);
}

TEST(Scenario, FalsePositivesCarryNoIdentity) {
  ScenarioConfig c;
  c.false_positive_rate = 2.0;
  c.frame_count = 100;
  const Scenario s = generate_scenario(c);
  EXPECT_GT(s.false_positives, 100u);
  EXPECT_EQ(s.detections.size(), s.ground_truth.size() + s.false_positives);
}

TEST(Scenario, Validation) {
  ScenarioConfig c;
  c.miss_rate = 1.0;
  EXPECT_THROW(generate_scenario(c), ParameterError);
  c = {};
  c.max_height = 800;
  EXPECT_THROW(generate_scenario(c), ParameterError);
  c = {};
  c.min_speed = 4;
  c.max_speed = 3;
  EXPECT_THROW(generate_scenario(c), ParameterError);
  c = {};
  c.descriptor_dim = 1;
  EXPECT_THROW(generate_scenario(c), ParameterError);
}
