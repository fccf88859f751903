#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>
#include <absl/container/flat_hash_map.h>

#include "rhmap/index.hpp"
#include "rhmap/map_config.hpp"
#include "rhmap/region.hpp"
#include "rhmap/region_table.hpp"

namespace rhmap {

/// Highest and lowest occupied cube centers of a region column, in meters.
struct ColumnExtent {
  double max = 0.0;
  double min = 0.0;
};

/// Running mean of ground cube heights in one cube-resolution column.
struct GroundHeight {
  double mean = 0.0;
  std::uint64_t count = 0;
};

struct MapPoint {
  Eigen::Vector3d position;
  bool is_ground = false;

  friend bool operator==(const MapPoint&, const MapPoint&) = default;
};

/// Two-layer region-wise hash map.
///
/// Layer one hashes region indices to regions; layer two addresses cubes
/// inside a region. Side tables keep the column height band H (per region
/// column), the ground height G (per cube column) and the list of region
/// z-indices present in each region column.
///
/// Mutations need exclusive access. Const members never write to shared state,
/// so concurrent readers are safe. The map is movable between threads.
class RHMap {
 public:
  explicit RHMap(const MapConfig& config = {});

  const MapConfig& config() const { return config_; }

  /// Applies one occupancy hit to cube `i` and returns its updated state.
  Cube integrate_hit(const GlobalIndex& i);
  /// Convenience: point_to_indices followed by integrate_hit.
  Cube insert_point(const Eigen::Vector3d& p);

  const Region* find_region(const RegionIndex& key) const { return regions_.find(key); }
  Region* find_region(const RegionIndex& key) { return regions_.find(key); }
  const Cube* find_cube(const GlobalIndex& i) const;
  bool is_occupied(const GlobalIndex& i) const;

  /// Marks an occupied cube as ground. Newly marked cubes fold their center
  /// height into G. Returns true when the cube was newly marked.
  bool mark_ground(const GlobalIndex& i);

  /// Folds one ground height sample into G(o).
  const GroundHeight& update_ground_mean(const ColumnIndex& o, double z);
  std::optional<GroundHeight> ground_height(const ColumnIndex& o) const;
  /// G for all cube columns of one region column, row-major in (y, x) cube
  /// offsets, or nullptr when none of them has a sample. Entries with count 0
  /// have no estimate.
  const GroundHeight* ground_tile(const RegionColumn& o) const;

  /// Deletes the non-ground cubes of one region. Empty regions are evicted and
  /// the column band is marked for lazy recomputation. Missing regions are a no-op.
  std::size_t remove_region_nonground(const RegionIndex& key);

  /// H(O_r). Dirty columns are rescanned on read without caching the result.
  std::optional<ColumnExtent> column_extent(const RegionColumn& o) const;
  /// Rescans and caches every column dirtied by removals.
  void refresh_dirty_columns();

  /// Region z-indices present in a region column, ascending.
  const std::vector<std::int32_t>* column_regions(const RegionColumn& o) const;
  bool column_has_cubes(const RegionColumn& o) const;

  /// One point per occupied cube, at the cube center, ordered by region index
  /// then cube index.
  std::vector<MapPoint> export_occupied_points() const;

  std::size_t region_count() const { return regions_.size(); }
  std::size_t occupied_cube_count() const { return occupied_cubes_; }
  std::size_t ground_cube_count() const { return ground_cubes_; }
  /// Ground cubes that disappeared during removals, counted from storage
  /// before and after each removal rather than from the ground counter.
  std::size_t ground_cubes_removed() const { return ground_removed_; }
  std::size_t bucket_count() const { return regions_.bucket_count(); }

  const RegionTable& regions() const { return regions_; }

  template <class F>
  void for_each_region(F&& f) const {
    regions_.for_each(std::forward<F>(f));
  }

 private:
  struct ColumnBand {
    ColumnExtent extent;
    bool dirty = false;
  };

  std::size_t tile_slot(const ColumnIndex& o) const {
    const std::int32_t m = config_.mask();
    return static_cast<std::size_t>((o.x & m) + config_.cubes_per_axis() * (o.y & m));
  }
  void extend_column(const RegionColumn& o, double z);
  std::optional<ColumnExtent> scan_column(const RegionColumn& o) const;

  MapConfig config_;
  RegionTable regions_;
  absl::flat_hash_map<RegionColumn, ColumnBand> bands_;
  std::vector<RegionColumn> dirty_;
  absl::flat_hash_map<RegionColumn, std::vector<std::int32_t>> columns_;
  // G is stored in dense tiles, one per region column, for locality.
  absl::flat_hash_map<RegionColumn, std::vector<GroundHeight>> ground_;
  // Last region touched by integrate_hit; cleared whenever a region is erased.
  RegionIndex last_key_;
  Region* last_region_ = nullptr;
  std::size_t occupied_cubes_ = 0;
  std::size_t ground_cubes_ = 0;
  std::size_t ground_removed_ = 0;
};

}  // namespace rhmap
