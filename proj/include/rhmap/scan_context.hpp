#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <absl/container/flat_hash_map.h>

#include "rhmap/index.hpp"
#include "rhmap/range_image.hpp"
#include "rhmap/rh_map.hpp"

namespace rhmap {

/// Height band of the current scan inside one region column.
struct ColumnContext {
  double z_max = 0.0;
  double z_min = 0.0;
  bool has_max_ring = false;
  std::uint32_t points = 0;
};

using ScanContext2D = absl::flat_hash_map<RegionColumn, ColumnContext>;

/// Height band and occlusion bounds of the sup/inf points inside one region.
struct RegionContext {
  double z_max = 0.0;
  double z_min = 0.0;
  double sup = 0.0;
  double inf = 0.0;
  /// Scan points inside the region, members or not.
  std::uint32_t points = 0;
};

using ScanContext3D = absl::flat_hash_map<RegionIndex, RegionContext>;

/// Builds the 2D context over world-frame points. `max_ring[i]` is nonzero
/// for points on the max ring.
ScanContext2D build_scan_context_2d(std::span<const Eigen::Vector3d> points,
                                    std::span<const std::uint8_t> max_ring, const MapConfig& cfg);

/// Builds the 3D context from sup/inf pairs indexing into world-frame points.
/// The bound heights are the world z of the bounding points. sup is the
/// smallest upper bound in the region and falls back to z_max when the region
/// has no sup member; inf is the largest lower bound and falls back to z_min.
ScanContext3D build_scan_context_3d(std::span<const Eigen::Vector3d> points,
                                    const SupInfPoints& bounds, const MapConfig& cfg);

/// Scan band over map band for a region column. Columns touching the max ring
/// use (scan z_max - map min) as the denominator. Degenerate denominators and
/// missing map columns give 1.
double compute_ratio1(const ColumnContext& ctx, const std::optional<ColumnExtent>& column,
                      double eps_div);

/// Map regions whose vertical extent meets [inf, sup] in the column of some
/// context entry, sorted and unique.
std::vector<RegionIndex> select_candidate_regions(const ScanContext3D& ctx, const RHMap& map);

/// Scan band over region band for an observed region, 0 for a candidate the
/// scan context does not contain, 1 for degenerate region bands.
double compute_ratio2(const ScanContext3D& ctx, const RHMap& map, const RegionIndex& region,
                      double eps_div);

}  // namespace rhmap
