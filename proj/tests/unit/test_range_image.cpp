#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "rhmap/range_image.hpp"

namespace rhmap {
namespace {

Eigen::Vector3f polar(double range, double elevation_deg, double azimuth_deg) {
  const double e = elevation_deg * std::numbers::pi / 180.0;
  const double a = azimuth_deg * std::numbers::pi / 180.0;
  return Eigen::Vector3d(range * std::cos(e) * std::cos(a), range * std::cos(e) * std::sin(a),
                         range * std::sin(e))
      .cast<float>();
}

TEST(RangeImage, AxisPointLandsInColumnZero) {
  Scan scan;
  scan.points.push_back({10, 0, 0});
  const RangeImage img = build_range_image(scan, RangeImageConfig{});
  const int row = static_cast<int>(24.8 / 26.8 * 64);
  EXPECT_TRUE(img.at(row, 0).filled());
  EXPECT_FLOAT_EQ(img.at(row, 0).range, 10.0F);
  EXPECT_EQ(img.filled_count(), 1U);
}

TEST(RangeImage, NearerPointWinsSharedCell) {
  Scan scan;
  scan.points.push_back({8, 0, 0});
  scan.points.push_back({5, 0, 0});
  const RangeImage img = build_range_image(scan, RangeImageConfig{});
  const int row = static_cast<int>(24.8 / 26.8 * 64);
  EXPECT_FLOAT_EQ(img.at(row, 0).range, 5.0F);
  EXPECT_EQ(img.at(row, 0).point, 1);
}

TEST(RangeImage, OutOfFovIsDropped) {
  Scan scan;
  scan.points.push_back({0, 0, 5});
  scan.points.push_back({0, 0, 0});
  const RangeImage img = build_range_image(scan, RangeImageConfig{});
  EXPECT_EQ(img.filled_count(), 0U);
  EXPECT_EQ(img.dropped(), 2U);
}

TEST(RangeImage, FullRingFillsOneRow) {
  RangeImageConfig cfg;
  Scan scan;
  for (int c = 0; c < cfg.cols; ++c) {
    scan.points.push_back(polar(12.0, -10.0, (c + 0.5) * 360.0 / cfg.cols));
  }
  const RangeImage img = build_range_image(scan, cfg);
  const int row = static_cast<int>((-10.0 + 24.8) / 26.8 * 64);
  for (int c = 0; c < cfg.cols; ++c) EXPECT_TRUE(img.at(row, c).filled()) << c;
  EXPECT_EQ(img.filled_count(), static_cast<std::size_t>(cfg.cols));
}

TEST(MaxRing, FarthestReturnPerColumn) {
  RangeImageConfig cfg;
  cfg.rows = 4;
  cfg.cols = 4;
  RangeImage img(cfg.rows, cfg.cols);
  img.at(0, 1) = {3.0F, 0.0F, 0};
  img.at(2, 1) = {20.0F, 0.0F, 1};
  img.at(3, 2) = {7.0F, 0.0F, 2};
  EXPECT_EQ(extract_max_ring(img), (std::vector<std::int32_t>{1, 2}));
}

TEST(MaxRing, MatchesExhaustiveScan) {
  Scan scan;
  for (int i = 0; i < 3000; ++i) {
    scan.points.push_back(polar(2.0 + (i * 37 % 400) * 0.1, -24.0 + (i * 13 % 250) * 0.1,
                                (i * 7919 % 3600) * 0.1));
  }
  const RangeImage img = build_range_image(scan, RangeImageConfig{});
  std::vector<std::int32_t> expected;
  for (int c = 0; c < img.cols(); ++c) {
    float best = -1.0F;
    std::int32_t id = -1;
    for (int r = 0; r < img.rows(); ++r) {
      if (img.at(r, c).filled() && img.at(r, c).range > best) {
        best = img.at(r, c).range;
        id = img.at(r, c).point;
      }
    }
    if (id >= 0) expected.push_back(id);
  }
  EXPECT_EQ(extract_max_ring(img), expected);
}

RangeImage column(std::initializer_list<std::pair<float, float>> cells) {
  RangeImage img(static_cast<int>(cells.size()), 1);
  int row = 0;
  for (const auto& [range, height] : cells) {
    if (range > 0) img.at(row, 0) = {range, height, row};
    ++row;
  }
  return img;
}

TEST(SupInf, UniformColumnHasNoBounds) {
  const RangeImage img = column({{10, 0}, {10, 0.5F}, {10, 1}, {10, 1.5F}});
  const SupInfPoints b = extract_sup_inf(img, SupInfConfig{});
  EXPECT_TRUE(b.sup.empty());
  EXPECT_TRUE(b.inf.empty());
}

TEST(SupInf, JumpUpwardGivesSupAtUpperCell) {
  const RangeImage img = column({{10, 0.5F}, {25, 2.5F}});
  const SupInfPoints b = extract_sup_inf(img, SupInfConfig{});
  ASSERT_EQ(b.sup.size(), 1U);
  EXPECT_EQ(b.sup[0].point, 0);
  EXPECT_EQ(b.sup[0].bound, 1);
  ASSERT_EQ(b.inf.size(), 1U);
  EXPECT_EQ(b.inf[0].point, 1);
  EXPECT_EQ(b.inf[0].bound, 0);
}

TEST(SupInf, SignedConventionsDifferFromAbsolute) {
  const RangeImage img = column({{10, 0.5F}, {25, 2.5F}});
  SupInfConfig cfg;
  cfg.convention = JumpConvention::kCurrentMinusNeighbor;
  SupInfPoints b = extract_sup_inf(img, cfg);
  EXPECT_TRUE(b.sup.empty());
  EXPECT_EQ(b.inf.size(), 1U);
  cfg.convention = JumpConvention::kNeighborMinusCurrent;
  b = extract_sup_inf(img, cfg);
  EXPECT_EQ(b.sup.size(), 1U);
  EXPECT_TRUE(b.inf.empty());
}

TEST(SupInf, SearchStopsAfterMaxRows) {
  const RangeImage img = column({{10, 0}, {0, 0}, {0, 0}, {30, 3}});
  SupInfConfig cfg;
  cfg.max_search = 2;
  EXPECT_TRUE(extract_sup_inf(img, cfg).sup.empty());
  cfg.max_search = 3;
  EXPECT_EQ(extract_sup_inf(img, cfg).sup.size(), 1U);
}

TEST(SupInf, OrderedBoundsRejectsInvertedPairs) {
  // The upper cell is a far ground return below the current point.
  const RangeImage img = column({{10, 1.0F}, {30, -1.5F}});
  SupInfConfig cfg;
  EXPECT_TRUE(extract_sup_inf(img, cfg).sup.empty());
  cfg.ordered_bounds = false;
  EXPECT_EQ(extract_sup_inf(img, cfg).sup.size(), 1U);
}

}  // namespace
}  // namespace rhmap
