#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "rhmap/scenes.hpp"
#include "rhmap/synthetic.hpp"

namespace rhmap {
namespace {

TEST(Synthetic, FlatGroundHitsAnalyticRange) {
  SceneSpec s;
  s.path.start = {0, 0, 1.8};
  s.beams.azimuth_steps = 36;
  const SyntheticFrame f = render_frame(s, 0, 0);
  ASSERT_FALSE(f.scan.empty());
  for (std::size_t i = 0; i < f.scan.size(); ++i) {
    const Eigen::Vector3d p = f.scan.points[i].cast<double>();
    const double e = s.beams.elevation(f.scan.rings[i]);
    ASSERT_LT(e, 0.0);
    EXPECT_NEAR(p.norm(), 1.8 / std::sin(-e), 1e-3);
    EXPECT_NEAR(f.pose.apply(p).z(), 0.0, 1e-4);
    EXPECT_EQ(f.labels[i], kLabelRoad);
  }
}

TEST(Synthetic, DeterministicInSeed) {
  SceneSpec s = residue_scene();
  s.beams.range_noise = 0.02;
  const SyntheticFrame a = render_frame(s, 3, 7);
  const SyntheticFrame b = render_frame(s, 3, 7);
  const SyntheticFrame c = render_frame(s, 3, 8);
  EXPECT_EQ(a.scan.points, b.scan.points);
  EXPECT_EQ(a.dynamic, b.dynamic);
  EXPECT_NE(a.scan.points, c.scan.points);
}

TEST(Synthetic, MovingBoxPointsAreDynamic) {
  SceneSpec s;
  s.path.start = {0, 0, 1.8};
  s.boxes.push_back({{5, -1, 0.3}, {7, 1, 2}, {1, 0, 0}});
  const SyntheticFrame f = render_frame(s, 0, 0);
  std::size_t dynamic = 0;
  for (std::size_t i = 0; i < f.scan.size(); ++i) {
    const bool on_box = f.pose.apply(f.scan.points[i].cast<double>()).z() > 0.2;
    EXPECT_EQ(f.dynamic[i] != 0, on_box);
    dynamic += f.dynamic[i];
  }
  EXPECT_GT(dynamic, 100U);
}

TEST(Synthetic, SpecJsonRoundTrip) {
  const SceneSpec s = urban_scene();
  const SceneSpec r = parse_scene_spec(scene_spec_to_json(s));
  EXPECT_EQ(scene_spec_to_json(r), scene_spec_to_json(s));
  EXPECT_THROW(parse_scene_spec("{\"frames\": -1}"), std::invalid_argument);
}

TEST(Synthetic, SensorInsideBoxIsRejected) {
  SceneSpec s;
  s.boxes.push_back({{-1, -1, 0}, {1, 1, 3}, {0, 0, 0}});
  EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(NormalSampler, MomentsAndReplay) {
  NormalSampler a(3), b(3);
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double x = a.next();
    EXPECT_EQ(x, b.next());
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / 20000, 0.0, 0.03);
  EXPECT_NEAR(sq / 20000, 1.0, 0.05);
}

}  // namespace
}  // namespace rhmap
