#include <algorithm>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "rhmap/scan_context.hpp"

namespace rhmap {
namespace {

TEST(ScanContext2D, SinglePointAndTwoHeights) {
  const MapConfig cfg;
  const std::vector<Eigen::Vector3d> one{{0.3, 0.3, 1.2}};
  auto ctx = build_scan_context_2d(one, {}, cfg);
  ASSERT_EQ(ctx.size(), 1U);
  EXPECT_EQ(ctx.begin()->second.z_max, 1.2);
  EXPECT_EQ(ctx.begin()->second.z_min, 1.2);

  const std::vector<Eigen::Vector3d> two{{0.3, 0.3, 0.1}, {0.5, 0.1, 1.9}};
  const std::vector<std::uint8_t> ring{0, 1};
  ctx = build_scan_context_2d(two, ring, cfg);
  ASSERT_EQ(ctx.size(), 1U);
  EXPECT_EQ(ctx.begin()->second.z_max, 1.9);
  EXPECT_EQ(ctx.begin()->second.z_min, 0.1);
  EXPECT_TRUE(ctx.begin()->second.has_max_ring);
  EXPECT_EQ(ctx.begin()->second.points, 2U);
}

TEST(ScanContext2D, ExtremaMatchGroupBy) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  const MapConfig cfg;
  std::vector<Eigen::Vector3d> pts;
  for (int i = 0; i < 5000; ++i) pts.emplace_back(u(rng), u(rng), u(rng) * 0.3);
  const auto ctx = build_scan_context_2d(pts, {}, cfg);
  std::map<RegionColumn, std::pair<double, double>> oracle;
  for (const auto& p : pts) {
    const RegionColumn o = region_column_of(column_of(global_index(p, 0.1)), cfg.mask());
    auto [it, fresh] = oracle.try_emplace(o, p.z(), p.z());
    it->second.first = std::max(it->second.first, p.z());
    it->second.second = std::min(it->second.second, p.z());
  }
  ASSERT_EQ(ctx.size(), oracle.size());
  for (const auto& [o, band] : oracle) {
    EXPECT_EQ(ctx.at(o).z_max, band.first);
    EXPECT_EQ(ctx.at(o).z_min, band.second);
  }
}

TEST(Ratio1, ArithmeticAndGuards) {
  const ColumnContext equal{2.0, 0.0, false, 5};
  EXPECT_DOUBLE_EQ(compute_ratio1(equal, ColumnExtent{2.0, 0.0}, 1e-6), 1.0);
  const ColumnContext thin{0.2, 0.0, false, 5};
  EXPECT_DOUBLE_EQ(compute_ratio1(thin, ColumnExtent{2.0, 0.0}, 1e-6), 0.1);
  EXPECT_DOUBLE_EQ(compute_ratio1(thin, std::nullopt, 1e-6), 1.0);
  EXPECT_DOUBLE_EQ(compute_ratio1(thin, ColumnExtent{0.5, 0.5}, 1e-6), 1.0);
  // On the max ring the map top is replaced by the scan top.
  const ColumnContext ring{1.0, 0.5, true, 5};
  EXPECT_DOUBLE_EQ(compute_ratio1(ring, ColumnExtent{4.0, 0.0}, 1e-6), 0.5);
}

TEST(ScanContext3D, BoundsAndFallbacks) {
  const MapConfig cfg;
  // Points 0 and 1 share a region; 2 and 3 only serve as bounds.
  const std::vector<Eigen::Vector3d> pts{{0.1, 0.1, 0.2}, {0.2, 0.1, 0.4}, {5, 5, 3.0}, {5, 5, 2.5}};
  SupInfPoints b;
  b.sup = {{0, 2}, {1, 3}};
  const auto ctx = build_scan_context_3d(pts, b, cfg);
  const auto& c = ctx.at(RegionIndex{0, 0, 0});
  EXPECT_DOUBLE_EQ(c.sup, 2.5);
  EXPECT_DOUBLE_EQ(c.inf, 0.2);  // falls back to z_min
  EXPECT_DOUBLE_EQ(c.z_max, 0.4);
  EXPECT_EQ(ctx.size(), 1U);
}

TEST(ScanContext3D, BandCountsEveryPointOfTheRegion) {
  const MapConfig cfg;
  const std::vector<Eigen::Vector3d> pts{{0.1, 0.1, 0.1}, {0.3, 0.2, 0.7}, {0.4, 0.4, 0.3}};
  SupInfPoints b;
  b.inf = {{2, 0}};
  const auto ctx = build_scan_context_3d(pts, b, cfg);
  const auto& c = ctx.at(RegionIndex{0, 0, 0});
  EXPECT_DOUBLE_EQ(c.z_min, 0.1);
  EXPECT_DOUBLE_EQ(c.z_max, 0.7);
  EXPECT_EQ(c.points, 3U);
  EXPECT_GE(c.sup, c.z_min);
  EXPECT_LE(c.inf, c.z_max);
}

TEST(CandidateRegions, SpanSelectsStackedRegions) {
  RHMap map;
  for (int z : {0, 8, 16, 24}) map.integrate_hit({1, 1, z});
  ScanContext3D ctx;
  ctx[RegionIndex{0, 0, 0}] = {0.3, 0.3, 2.0, 0.3, 1};
  EXPECT_EQ(select_candidate_regions(ctx, map),
            (std::vector<RegionIndex>{{0, 0, 0}, {0, 0, 8}, {0, 0, 16}}));
  ctx[RegionIndex{0, 0, 0}] = {0.3, 0.3, 0.3, 0.3, 1};
  EXPECT_EQ(select_candidate_regions(ctx, map), (std::vector<RegionIndex>{{0, 0, 0}}));
}

TEST(CandidateRegions, MatchesIntervalScan) {
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> zc(-10, 60);
  std::uniform_real_distribution<double> h(-1.0, 6.0);
  RHMap map;
  for (int n = 0; n < 300; ++n) map.integrate_hit({n % 3 * 8, 0, zc(rng)});
  ScanContext3D ctx;
  for (int x : {0, 8, 16}) {
    const double a = h(rng), b = h(rng);
    ctx[RegionIndex{x, 0, 0}] = {0, 0, std::max(a, b), std::min(a, b), 1};
  }
  std::vector<RegionIndex> expected;
  for (const auto& [key, c] : ctx) {
    for (const std::int32_t z : *map.column_regions(column_of(key))) {
      if (z * 0.1 <= c.sup && c.inf < (z + 8) * 0.1) expected.push_back({key.x, key.y, z});
    }
  }
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(select_candidate_regions(ctx, map), expected);
}

TEST(Ratio2, ObservedUnobservedAndDegenerate) {
  RHMap map;
  map.integrate_hit({0, 0, 0});
  map.integrate_hit({0, 0, 5});
  ScanContext3D ctx;
  ctx[RegionIndex{0, 0, 0}] = {0.55, 0.05, 0.55, 0.05, 4};
  EXPECT_DOUBLE_EQ(compute_ratio2(ctx, map, {0, 0, 0}, 1e-6), 1.0);
  ctx[RegionIndex{0, 0, 0}] = {0.15, 0.05, 0.55, 0.05, 4};
  EXPECT_NEAR(compute_ratio2(ctx, map, {0, 0, 0}, 1e-6), 0.2, 1e-12);
  EXPECT_DOUBLE_EQ(compute_ratio2(ctx, map, {0, 0, 8}, 1e-6), 0.0);
  RHMap flat;
  flat.integrate_hit({0, 0, 0});
  EXPECT_DOUBLE_EQ(compute_ratio2(ctx, flat, {0, 0, 0}, 1e-6), 1.0);
}

TEST(Ratio, NeverNegative) {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int n = 0; n < 1000; ++n) {
    double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    const ColumnContext ctx{std::max(a, b), std::min(a, b), n % 2 == 0, 3};
    EXPECT_GE(compute_ratio1(ctx, ColumnExtent{std::max(c, d), std::min(c, d)}, 1e-6), 0.0);
  }
}

}  // namespace
}  // namespace rhmap
