#include "rhmap/rh_map.hpp"

#include <algorithm>

namespace rhmap {

RHMap::RHMap(const MapConfig& config)
    : config_((config.validate(), config)), regions_(config.table_size, config.primes) {}

Cube RHMap::integrate_hit(const GlobalIndex& i) {
  const std::int32_t m = config_.mask();
  const RegionIndex r = region_of(i, m);
  Region* region = last_region_;
  if (region == nullptr || !(last_key_ == r)) {
    auto [found, created] = regions_.find_or_create(r, config_.cubes_per_axis());
    if (created) {
      auto& zs = columns_[column_of(r)];
      zs.insert(std::upper_bound(zs.begin(), zs.end(), r.z), r.z);
    }
    region = found;
    last_key_ = r;
    last_region_ = found;
  }
  const auto result = region->hit(cube_of(i, m), config_.log_odds_hit, config_.clamp_lo,
                                   config_.clamp_hi, config_.occupied_threshold);
  if (result.became_occupied) {
    ++occupied_cubes_;
    extend_column(column_of(r), cube_center_z(i.z, config_.cube_size));
  }
  return result.cube;
}

Cube RHMap::insert_point(const Eigen::Vector3d& p) {
  return integrate_hit(point_to_indices(p, config_).global);
}

const Cube* RHMap::find_cube(const GlobalIndex& i) const {
  const Region* region = regions_.find(region_of(i, config_.mask()));
  if (region == nullptr) {
    return nullptr;
  }
  const Cube& cube = region->cube(cube_of(i, config_.mask()));
  return cube.present() ? &cube : nullptr;
}

bool RHMap::is_occupied(const GlobalIndex& i) const {
  const Cube* cube = find_cube(i);
  return cube != nullptr && cube->occupied();
}

bool RHMap::mark_ground(const GlobalIndex& i) {
  Region* region = regions_.find(region_of(i, config_.mask()));
  if (region == nullptr || !region->set_ground(cube_of(i, config_.mask()))) {
    return false;
  }
  ++ground_cubes_;
  update_ground_mean(column_of(i), cube_center_z(i.z, config_.cube_size));
  return true;
}

const GroundHeight& RHMap::update_ground_mean(const ColumnIndex& o, double z) {
  auto& tile = ground_[region_column_of(o, config_.mask())];
  if (tile.empty()) {
    const auto side = static_cast<std::size_t>(config_.cubes_per_axis());
    tile.resize(side * side);
  }
  GroundHeight& g = tile[tile_slot(o)];
  ++g.count;
  g.mean += (z - g.mean) / static_cast<double>(g.count);
  return g;
}

std::optional<GroundHeight> RHMap::ground_height(const ColumnIndex& o) const {
  const GroundHeight* tile = ground_tile(region_column_of(o, config_.mask()));
  if (tile == nullptr || tile[tile_slot(o)].count == 0) {
    return std::nullopt;
  }
  return tile[tile_slot(o)];
}

const GroundHeight* RHMap::ground_tile(const RegionColumn& o) const {
  const auto it = ground_.find(o);
  return it == ground_.end() ? nullptr : it->second.data();
}

std::size_t RHMap::remove_region_nonground(const RegionIndex& key) {
  Region* region = regions_.find(key);
  if (region == nullptr) {
    return 0;
  }
  const int ground_before = region->count_ground_flags();
  const std::size_t removed = region->remove_nonground();
  occupied_cubes_ -= removed;
  const int ground_after = region->count_ground_flags();
  if (ground_after < ground_before) {
    const auto lost = static_cast<std::size_t>(ground_before - ground_after);
    ground_removed_ += lost;
    ground_cubes_ -= lost;
  }
  const RegionColumn o = column_of(key);
  if (region->empty()) {
    last_region_ = nullptr;
    regions_.erase(key);
    auto it = columns_.find(o);
    if (it != columns_.end()) {
      auto& zs = it->second;
      zs.erase(std::lower_bound(zs.begin(), zs.end(), key.z));
      if (zs.empty()) {
        columns_.erase(it);
      }
    }
  }
  if (removed > 0) {
    auto band = bands_.find(o);
    if (band != bands_.end() && !band->second.dirty) {
      band->second.dirty = true;
      dirty_.push_back(o);
    }
  }
  return removed;
}

void RHMap::extend_column(const RegionColumn& o, double z) {
  auto [it, inserted] = bands_.try_emplace(o);
  ColumnBand& band = it->second;
  if (inserted) {
    band.extent = {z, z};
    return;
  }
  if (band.dirty) {
    // The cached band is stale, rescan before extending.
    if (auto fresh = scan_column(o)) {
      band.extent = *fresh;
    } else {
      band.extent = {z, z};
    }
    band.dirty = false;
  }
  band.extent.max = std::max(band.extent.max, z);
  band.extent.min = std::min(band.extent.min, z);
}

std::optional<ColumnExtent> RHMap::scan_column(const RegionColumn& o) const {
  const auto it = columns_.find(o);
  if (it == columns_.end()) {
    return std::nullopt;
  }
  std::optional<ColumnExtent> extent;
  for (const std::int32_t z : it->second) {
    const Region* region = regions_.find(RegionIndex{o.x, o.y, z});
    if (region == nullptr || region->occupied_count() == 0) {
      continue;
    }
    const double lo = region->z_min(config_.cube_size);
    const double hi = region->z_max(config_.cube_size);
    if (!extent) {
      extent = ColumnExtent{hi, lo};
    } else {
      extent->max = std::max(extent->max, hi);
      extent->min = std::min(extent->min, lo);
    }
  }
  return extent;
}

std::optional<ColumnExtent> RHMap::column_extent(const RegionColumn& o) const {
  const auto it = bands_.find(o);
  if (it == bands_.end()) {
    return std::nullopt;
  }
  if (it->second.dirty) {
    return scan_column(o);
  }
  return it->second.extent;
}

void RHMap::refresh_dirty_columns() {
  for (const RegionColumn& o : dirty_) {
    const auto it = bands_.find(o);
    if (it == bands_.end() || !it->second.dirty) {
      continue;
    }
    if (auto fresh = scan_column(o)) {
      it->second.extent = *fresh;
      it->second.dirty = false;
    } else {
      bands_.erase(it);
    }
  }
  dirty_.clear();
}

const std::vector<std::int32_t>* RHMap::column_regions(const RegionColumn& o) const {
  const auto it = columns_.find(o);
  return it == columns_.end() ? nullptr : &it->second;
}

bool RHMap::column_has_cubes(const RegionColumn& o) const { return columns_.contains(o); }

std::vector<MapPoint> RHMap::export_occupied_points() const {
  std::vector<const Region*> sorted;
  sorted.reserve(regions_.size());
  regions_.for_each([&](const RegionIndex&, const Region& region) { sorted.push_back(&region); });
  std::sort(sorted.begin(), sorted.end(),
            [](const Region* a, const Region* b) { return a->key() < b->key(); });

  std::vector<MapPoint> points;
  points.reserve(occupied_cubes_);
  std::vector<std::pair<CubeIndex, bool>> cubes;
  for (const Region* region : sorted) {
    cubes.clear();
    region->for_each_occupied(
        [&](const CubeIndex& c, const Cube& cube) { cubes.emplace_back(c, cube.is_ground()); });
    std::sort(cubes.begin(), cubes.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [c, ground] : cubes) {
      points.push_back({cube_center(compose(region->key(), c), config_.cube_size), ground});
    }
  }
  return points;
}

}  // namespace rhmap
