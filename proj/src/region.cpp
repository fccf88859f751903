#include "rhmap/region.hpp"

#include <algorithm>

namespace rhmap {

Region::Region(const RegionIndex& key, std::int32_t side)
    : key_(key), side_(side), cubes_(static_cast<std::size_t>(side) * side * side) {}

double Region::z_mean(double cube_size) const {
  if (occupied_count_ == 0) {
    return 0.0;
  }
  const double mean_index = static_cast<double>(z_index_sum_) / occupied_count_;
  return (mean_index + 0.5) * cube_size;
}

void Region::add_height(std::int32_t iz) {
  if (occupied_count_ == 0) {
    z_min_index_ = iz;
    z_max_index_ = iz;
  } else {
    z_min_index_ = std::min(z_min_index_, iz);
    z_max_index_ = std::max(z_max_index_, iz);
  }
  z_index_sum_ += iz;
  ++occupied_count_;
}

Region::HitResult Region::hit(const CubeIndex& c, double increment, double lo, double hi,
                              double threshold) {
  Cube& cube = cubes_[slot(c)];
  if (!cube.present()) {
    cube.flags |= Cube::kPresent;
    ++present_count_;
  }
  const double updated = std::clamp(static_cast<double>(cube.log_odds) + increment, lo, hi);
  cube.log_odds = static_cast<float>(updated);

  HitResult result;
  if (!cube.occupied() && updated > threshold) {
    cube.flags |= Cube::kOccupied;
    add_height(key_.z + c.z);
    needs_fit_ = true;
    result.became_occupied = true;
  }
  result.cube = cube;
  return result;
}

bool Region::set_ground(const CubeIndex& c) {
  Cube& cube = cubes_[slot(c)];
  if (!cube.occupied() || cube.is_ground()) {
    return false;
  }
  cube.flags |= Cube::kGround;
  ++ground_count_;
  return true;
}

std::size_t Region::remove_nonground() {
  std::size_t removed = 0;
  if (present_count_ == ground_count_) {
    return removed;
  }
  for (Cube& cube : cubes_) {
    if (cube.present() && !cube.is_ground()) {
      if (cube.occupied()) {
        ++removed;
      }
      cube = Cube{};
      --present_count_;
    }
  }
  if (removed > 0) {
    recompute_stats();
  }
  return removed;
}

int Region::count_ground_flags() const {
  int n = 0;
  for (const Cube& cube : cubes_) {
    n += cube.present() && cube.is_ground() ? 1 : 0;
  }
  return n;
}

void Region::recompute_stats() {
  occupied_count_ = 0;
  z_index_sum_ = 0;
  auto add = [this](const CubeIndex& c, const Cube&) { add_height(key_.z + c.z); };
  visit_occupied(0, side_ - 1, add);
}

}  // namespace rhmap
