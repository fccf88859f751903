#include "rhmap/ground_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>

namespace rhmap {

namespace {

bool has_neighbour_cubes(const RHMap& map, const RegionIndex& r) {
  const std::int32_t side = map.config().cubes_per_axis();
  for (int dx = -1; dx <= 1; ++dx) {
    for (int dy = -1; dy <= 1; ++dy) {
      if (dx == 0 && dy == 0) {
        continue;
      }
      if (map.column_has_cubes({r.x + dx * side, r.y + dy * side})) {
        return true;
      }
    }
  }
  return false;
}

// Lowest mapped height over the region column and its eight neighbours.
double lowest_nearby(const RHMap& map, const RegionColumn& rc) {
  const std::int32_t side = map.config().cubes_per_axis();
  double low = std::numeric_limits<double>::infinity();
  for (int dx = -1; dx <= 1; ++dx) {
    for (int dy = -1; dy <= 1; ++dy) {
      if (const auto extent = map.column_extent({rc.x + dx * side, rc.y + dy * side})) {
        low = std::min(low, extent->min);
      }
    }
  }
  return low;
}

}  // namespace

std::vector<RegionIndex> elect_candidate_ground_regions(const RHMap& map,
                                                        std::span<const Eigen::Vector3d> points,
                                                        const GroundConfig& cfg) {
  const double cube = map.config().cube_size;
  const std::int32_t m = map.config().mask();
  const std::int32_t side = map.config().cubes_per_axis();
  const auto tile_cells = static_cast<std::size_t>(side * side);
  constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

  // Per-column scratch lives in dense tiles, one per region column touched by
  // the scan; `cell` addresses a column inside the pooled tiles.
  absl::flat_hash_map<RegionColumn, std::size_t> tiles;
  std::vector<const GroundHeight*> ground_tiles;
  std::vector<double> lowest;
  std::vector<double> tile_lowest;
  std::vector<double> reference;
  struct Member {
    GlobalIndex g;
    std::size_t cell;
  };
  std::vector<Member> members;
  members.reserve(points.size());

  RegionColumn last_rc{};
  std::size_t last_tile = 0;
  bool have_last = false;
  for (const auto& p : points) {
    const GlobalIndex g = global_index(p, cube);
    const RegionColumn rc = region_column_of(column_of(g), m);
    if (!have_last || !(rc == last_rc)) {
      auto [it, inserted] = tiles.try_emplace(rc, ground_tiles.size());
      if (inserted) {
        ground_tiles.push_back(map.ground_tile(rc));
        tile_lowest.push_back(lowest_nearby(map, rc));
        lowest.resize(lowest.size() + tile_cells, std::numeric_limits<double>::infinity());
        reference.resize(reference.size() + tile_cells, kUnset);
      }
      last_rc = rc;
      last_tile = it->second;
      have_last = true;
    }
    const auto slot = static_cast<std::size_t>((g.x & m) + side * (g.y & m));
    const std::size_t cell = last_tile * tile_cells + slot;
    lowest[cell] = std::min(lowest[cell], p.z());
    tile_lowest[last_tile] = std::min(tile_lowest[last_tile], p.z());
    members.push_back({g, cell});
  }

  absl::flat_hash_set<RegionIndex> elected;
  for (const Member& mb : members) {
    const RegionIndex r = region_of(mb.g, m);
    double& ref = reference[mb.cell];
    if (std::isnan(ref)) {
      const GroundHeight* tile = ground_tiles[mb.cell / tile_cells];
      const GroundHeight* g = tile != nullptr ? &tile[mb.cell % tile_cells] : nullptr;
      // Without a ground estimate, the lowest height seen around the region
      // column (map or scan) stands in for the ground.
      const double low = std::min(lowest[mb.cell], tile_lowest[mb.cell / tile_cells]);
      ref = g != nullptr && g->count > 0 ? g->mean : low + cfg.bootstrap_margin;
    }
    if (mb.g.z * cube < ref) {
      elected.insert(r);
    }
  }

  std::vector<RegionIndex> out;
  out.reserve(elected.size());
  for (const RegionIndex& r : elected) {
    if (has_neighbour_cubes(map, r)) {
      out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::optional<Plane> plane_from_moments(const Eigen::Vector3d& mean, const Eigen::Matrix3d& cov) {
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
  if (solver.info() != Eigen::Success) {
    return std::nullopt;
  }
  const Eigen::Vector3d& lambda = solver.eigenvalues();  // ascending
  // Collinear or coincident cubes leave the plane orientation undetermined.
  if (!(lambda(2) > 0.0) || lambda(1) <= 1e-9 * lambda(2)) {
    return std::nullopt;
  }
  Plane plane;
  plane.normal = solver.eigenvectors().col(0).normalized();
  if (plane.normal.z() < 0.0) {
    plane.normal = -plane.normal;
  }
  plane.offset = plane.normal.dot(mean);
  return plane;
}

}  // namespace

std::optional<Plane> fit_plane(std::span<const Eigen::Vector3d> indices) {
  if (indices.size() < 3) {
    return std::nullopt;
  }
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const auto& p : indices) {
    mean += p;
  }
  mean /= static_cast<double>(indices.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& p : indices) {
    const Eigen::Vector3d d = p - mean;
    cov += d * d.transpose();
  }
  cov /= static_cast<double>(indices.size());
  return plane_from_moments(mean, cov);
}

std::optional<Plane> fit_region_plane(RHMap& map, const RegionIndex& key) {
  Region* region = map.find_region(key);
  if (region == nullptr) {
    return std::nullopt;
  }
  // Moments in region-local offsets: small integers, so the single-pass sums
  // are exact.
  const double mean_local = region->z_mean(1.0) - 0.5 - key.z;
  std::int64_t n = 0;
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  Eigen::Matrix3d outer = Eigen::Matrix3d::Zero();
  region->for_each_occupied([&](const CubeIndex& c, const Cube&) {
    if (c.z <= mean_local) {
      const Eigen::Vector3d v(c.x, c.y, c.z);
      ++n;
      sum += v;
      outer += v * v.transpose();
    }
  });
  std::optional<Plane> plane;
  if (n >= 3) {
    const Eigen::Vector3d local_mean = sum / static_cast<double>(n);
    const Eigen::Matrix3d cov =
        outer / static_cast<double>(n) - local_mean * local_mean.transpose();
    const Eigen::Vector3d origin(key.x, key.y, key.z);
    plane = plane_from_moments(local_mean + origin, cov);
  }
  region->set_plane(plane);
  return plane;
}

std::vector<GlobalIndex> extract_ground_cubes(RHMap& map, const RegionIndex& key, double r_gro) {
  std::vector<GlobalIndex> ground;
  const Region* region = map.find_region(key);
  if (region == nullptr || !region->plane()) {
    return ground;
  }
  const Plane plane = *region->plane();
  std::vector<GlobalIndex> fresh;
  region->for_each_occupied([&](const CubeIndex& c, const Cube& cube) {
    const GlobalIndex g = compose(key, c);
    if (std::abs(plane.distance(Eigen::Vector3d(g.x, g.y, g.z))) < r_gro) {
      ground.push_back(g);
      if (!cube.is_ground()) {
        fresh.push_back(g);
      }
    }
  });
  for (const GlobalIndex& g : fresh) {
    map.mark_ground(g);
  }
  return ground;
}

GroundReport r_gpe(RHMap& map, std::span<const Eigen::Vector3d> points, const GroundConfig& cfg) {
  GroundReport report;
  const auto elected = elect_candidate_ground_regions(map, points, cfg);
  report.regions_elected = elected.size();
  const std::size_t ground_before = map.ground_cube_count();
  const double min_normal_z = std::cos(cfg.max_slope_deg * std::numbers::pi / 180.0);
  for (const RegionIndex& key : elected) {
    Region* region = map.find_region(key);
    if (region == nullptr || !region->needs_fit()) {
      continue;
    }
    region->clear_needs_fit();
    ++report.regions_fitted;
    const auto plane = fit_region_plane(map, key);
    if (plane && plane->normal.z() >= min_normal_z) {
      extract_ground_cubes(map, key, cfg.r_gro);
    }
  }
  report.ground_cubes_added = map.ground_cube_count() - ground_before;
  return report;
}

}  // namespace rhmap
