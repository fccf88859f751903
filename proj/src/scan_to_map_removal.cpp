#include "rhmap/scan_to_map_removal.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <vector>

#include "rhmap/scan_context.hpp"

namespace rhmap {

void ScanFresherConfig::validate() const {
  if (!(delta1 > 0.0)) throw std::invalid_argument("delta1 must be positive");
  if (!(delta2 > 0.0)) throw std::invalid_argument("delta2 must be positive");
  if (!(eps_div > 0.0)) throw std::invalid_argument("eps_div must be positive");
  if (!(sup_inf.r_sup > 0.0)) throw std::invalid_argument("r1 must be positive");
  if (!(sup_inf.r_inf > 0.0)) throw std::invalid_argument("r2 must be positive");
  if (sup_inf.max_search < 1) throw std::invalid_argument("max_search must be positive");
  if (!(ground.r_gro > 0.0)) throw std::invalid_argument("r_gro must be positive");
  if (!(ground.bootstrap_margin > 0.0)) {
    throw std::invalid_argument("ground_bootstrap_margin must be positive");
  }
  if (!(ground.max_slope_deg > 0.0 && ground.max_slope_deg <= 90.0)) {
    throw std::invalid_argument("max_ground_slope_deg must be in (0, 90]");
  }
  range_image.validate();
}

RemovalReport& RemovalReport::operator+=(const RemovalReport& other) {
  columns_flagged += other.columns_flagged;
  regions_flagged += other.regions_flagged;
  cubes_removed += other.cubes_removed;
  ground_cubes_added += other.ground_cubes_added;
  elapsed_ms += other.elapsed_ms;
  return *this;
}

RemovalReport s2m_removal(RHMap& map, const Scan& scan, const Pose& pose,
                          const ScanFresherConfig& cfg) {
  const auto world = transform_scan(scan, pose);
  return s2m_removal(map, scan, world, cfg);
}

RemovalReport s2m_removal(RHMap& map, const Scan& scan, std::span<const Eigen::Vector3d> world,
                          const ScanFresherConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  RemovalReport report;
  if (scan.empty()) {
    return report;
  }

  // Region of interest: every point, with the per-azimuth farthest returns
  // marked as the max ring.
  const RangeImage image = build_range_image(scan, cfg.range_image);
  std::vector<std::uint8_t> on_max_ring(scan.size(), 0);
  for (const std::int32_t id : extract_max_ring(image)) {
    on_max_ring[static_cast<std::size_t>(id)] = 1;
  }
  const SupInfPoints bounds = extract_sup_inf(image, cfg.sup_inf);

  const MapConfig& mc = map.config();
  const ScanContext2D ctx2 = build_scan_context_2d(world, on_max_ring, mc);
  std::vector<RegionColumn> flagged_columns;
  for (const auto& [o, c] : ctx2) {
    if (c.points >= cfg.min_support &&
        compute_ratio1(c, map.column_extent(o), cfg.eps_div) < cfg.delta1) {
      flagged_columns.push_back(o);
    }
  }

  const ScanContext3D ctx3 = build_scan_context_3d(world, bounds, mc);
  std::vector<RegionIndex> flagged_regions;
  for (const RegionIndex& r : select_candidate_regions(ctx3, map)) {
    const auto observed = ctx3.find(r);
    if (observed != ctx3.end() && observed->second.points < cfg.min_support) {
      continue;
    }
    if (compute_ratio2(ctx3, map, r, cfg.eps_div) < cfg.delta2) {
      flagged_regions.push_back(r);
    }
  }

  // All ratios are evaluated against the pre-removal map.
  std::sort(flagged_columns.begin(), flagged_columns.end());
  std::vector<std::int32_t> zs;
  for (const RegionColumn& o : flagged_columns) {
    const auto* column = map.column_regions(o);
    if (column == nullptr) {
      continue;
    }
    zs.assign(column->begin(), column->end());
    for (const std::int32_t z : zs) {
      report.cubes_removed += map.remove_region_nonground({o.x, o.y, z});
    }
  }
  for (const RegionIndex& r : flagged_regions) {
    report.cubes_removed += map.remove_region_nonground(r);
  }
  map.refresh_dirty_columns();

  report.columns_flagged = flagged_columns.size();
  report.regions_flagged = flagged_regions.size();
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace rhmap
