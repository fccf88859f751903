#include <thread>

#include <gtest/gtest.h>

#include "rhmap/backend.hpp"

namespace rhmap {
namespace {

TEST(InformationContent, FullEmptyAndHalf) {
  RangeImage full(2, 4);
  for (int c = 0; c < 4; ++c) full.at(1, c) = {80.0F, 0.0F, c};
  EXPECT_DOUBLE_EQ(information_content(full, 80.0), 100.0);
  EXPECT_DOUBLE_EQ(information_content(RangeImage(2, 4), 80.0), 0.0);
  RangeImage half(2, 4);
  half.at(0, 0) = {80.0F, 0.0F, 0};
  half.at(0, 1) = {80.0F, 0.0F, 1};
  EXPECT_DOUBLE_EQ(information_content(half, 80.0), 50.0);
  half.at(1, 2) = {500.0F, 0.0F, 2};
  EXPECT_DOUBLE_EQ(information_content(half, 80.0), 75.0);
  EXPECT_THROW(information_content(half, 0.0), std::invalid_argument);
}

KeyframeStamp stamp(double x, double t, double info) {
  return {Pose::from_yaw(0.0, {x, 0, 0}), t, info};
}

TEST(KeyframeSelect, Criteria) {
  const BackendConfig cfg;
  EXPECT_TRUE(keyframe_select({}, stamp(0, 0, 10), cfg));
  const std::vector<KeyframeStamp> history{stamp(0, 0, 40)};
  EXPECT_FALSE(keyframe_select(history, stamp(0.5, 1, 42), cfg));
  EXPECT_TRUE(keyframe_select(history, stamp(5.0, 1, 40), cfg));
  EXPECT_TRUE(keyframe_select(history, stamp(0.1, 10, 40), cfg));
  EXPECT_TRUE(keyframe_select(history, stamp(0.1, 1, 55), cfg));
}

TEST(KeyframeQueue, EvictsOldestAtCapacity) {
  KeyframeQueue q(2);
  for (int i = 0; i < 3; ++i) q.push({Scan{}, stamp(i, i, 0)});
  EXPECT_EQ(q.size(), 2U);
  EXPECT_EQ(q.evicted(), 1U);
  const auto taken = q.take_distant(Pose::from_yaw(0, {100, 0, 0}), 1.0, 10);
  ASSERT_EQ(taken.size(), 2U);
  EXPECT_EQ(taken[0].stamp.timestamp, 1.0);
  EXPECT_EQ(q.size(), 0U);
  EXPECT_THROW(KeyframeQueue(0), std::invalid_argument);
}

TEST(KeyframeQueue, DistanceGateAndLimit) {
  KeyframeQueue q(10);
  for (int i = 0; i < 5; ++i) q.push({Scan{}, stamp(i * 10.0, i, 0)});
  EXPECT_TRUE(q.take_distant(Pose::from_yaw(0, {20, 0, 0}), 25.0, 5).empty());
  const auto one = q.take_distant(Pose::from_yaw(0, {45, 0, 0}), 20.0, 1);
  ASSERT_EQ(one.size(), 1U);
  EXPECT_EQ(one[0].stamp.timestamp, 0.0);
  EXPECT_EQ(q.size(), 4U);
}

TEST(KeyframeQueue, ProducerAndConsumerThreads) {
  KeyframeQueue q(1000);
  std::size_t consumed = 0;
  std::thread producer([&] {
    for (int i = 0; i < 500; ++i) q.push({Scan{}, stamp(0, i, 0)});
  });
  std::thread consumer([&] {
    for (int spin = 0; spin < 100000 && consumed < 500; ++spin) {
      consumed += q.take_distant(Pose::from_yaw(0, {50, 0, 0}), 1.0, 7).size();
    }
  });
  producer.join();
  consumer.join();
  consumed += q.take_distant(Pose::from_yaw(0, {50, 0, 0}), 1.0, 1000).size();
  EXPECT_EQ(consumed, 500U);
}

TEST(BackendStep, StationaryRobotProcessesNothing) {
  RHMap map;
  KeyframeQueue q(5);
  q.push({Scan{}, stamp(0, 0, 0)});
  EXPECT_TRUE(backend_step(map, q, Pose{}, BackendConfig{}, ScanFresherConfig{}).empty());
  EXPECT_EQ(q.size(), 1U);
  EXPECT_EQ(backend_step(map, q, Pose::from_yaw(0, {30, 0, 0}), BackendConfig{},
                         ScanFresherConfig{})
                .size(),
            1U);
  EXPECT_EQ(q.size(), 0U);
}

}  // namespace
}  // namespace rhmap
