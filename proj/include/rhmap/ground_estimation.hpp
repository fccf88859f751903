#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "rhmap/index.hpp"
#include "rhmap/rh_map.hpp"

namespace rhmap {

struct GroundConfig {
  /// Plane distance margin, in cube units.
  double r_gro = 1.25;
  /// Columns without a ground estimate use (lowest scan z in the column +
  /// this margin) as their election reference, in meters.
  double bootstrap_margin = 0.3;
  /// Fitted planes steeper than this are not treated as ground, in degrees.
  double max_slope_deg = 45.0;
};

struct GroundReport {
  std::size_t regions_elected = 0;
  std::size_t regions_fitted = 0;
  std::size_t ground_cubes_added = 0;
};

/// Regions holding at least one scan point that lies below its column's
/// ground reference, minus isolated regions whose eight neighbouring region
/// columns are all empty. Sorted.
std::vector<RegionIndex> elect_candidate_ground_regions(const RHMap& map,
                                                        std::span<const Eigen::Vector3d> points,
                                                        const GroundConfig& cfg);

/// PCA plane through a set of cube indices. Empty when fewer than three
/// indices are given or they are collinear.
std::optional<Plane> fit_plane(std::span<const Eigen::Vector3d> indices);

/// Fits the region's ground plane from its occupied cubes at or below the
/// region's mean height, and stores the result (possibly empty) on the region.
std::optional<Plane> fit_region_plane(RHMap& map, const RegionIndex& region);

/// Marks the region's occupied cubes within `r_gro` of its plane as ground and
/// returns them. Empty when the region has no valid plane.
std::vector<GlobalIndex> extract_ground_cubes(RHMap& map, const RegionIndex& region, double r_gro);

/// Election followed by plane fitting and ground extraction on every elected
/// region that is unfitted or has gained cubes since its last fit. Planes
/// steeper than `max_slope_deg` (object faces) contribute no ground.
GroundReport r_gpe(RHMap& map, std::span<const Eigen::Vector3d> points, const GroundConfig& cfg);

}  // namespace rhmap
