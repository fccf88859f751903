#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "rhmap/index.hpp"

namespace rhmap {

/// Minimum-resolution occupancy cell.
struct Cube {
  static constexpr std::uint8_t kPresent = 1;
  static constexpr std::uint8_t kOccupied = 2;
  static constexpr std::uint8_t kGround = 4;

  float log_odds = 0.0F;
  std::uint8_t flags = 0;

  bool present() const { return (flags & kPresent) != 0; }
  bool occupied() const { return (flags & kOccupied) != 0; }
  bool is_ground() const { return (flags & kGround) != 0; }
};

/// Ground plane n . I = d expressed in cube-index units, n.z() >= 0.
struct Plane {
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
  double offset = 0.0;

  double distance(const Eigen::Vector3d& index) const { return normal.dot(index) - offset; }
};

/// Fixed block of (m+1)^3 cubes with height statistics over its occupied cubes.
///
/// The cube layer is direct-addressed: the in-region offset I_c maps
/// bijectively onto a slot, so no probing is needed below the region table.
class Region {
 public:
  Region(const RegionIndex& key, std::int32_t side);

  const RegionIndex& key() const { return key_; }
  std::int32_t side() const { return side_; }

  const Cube& cube(const CubeIndex& c) const { return cubes_[slot(c)]; }

  struct HitResult {
    Cube cube;
    bool became_occupied = false;
  };

  /// Adds `increment` to the cube's log-odds, clamps to [lo, hi] and updates
  /// the height statistics when the cube first crosses `threshold`.
  HitResult hit(const CubeIndex& c, double increment, double lo, double hi, double threshold);

  /// Marks an occupied cube as ground. Returns true only on the first marking.
  bool set_ground(const CubeIndex& c);

  /// Deletes every non-ground cube and recomputes the statistics from the
  /// survivors. Returns the number of occupied cubes deleted.
  std::size_t remove_nonground();

  int occupied_count() const { return occupied_count_; }
  int ground_count() const { return ground_count_; }
  /// Ground flags actually present in storage, counted cube by cube.
  int count_ground_flags() const;
  bool empty() const { return present_count_ == 0; }

  /// Height statistics over occupied cube centers, in meters. Only meaningful
  /// when occupied_count() > 0.
  double z_min(double cube_size) const { return cube_center_z(z_min_index_, cube_size); }
  double z_max(double cube_size) const { return cube_center_z(z_max_index_, cube_size); }
  double z_mean(double cube_size) const;
  std::int32_t z_min_index() const { return z_min_index_; }
  std::int32_t z_max_index() const { return z_max_index_; }

  const std::optional<Plane>& plane() const { return plane_; }
  void set_plane(std::optional<Plane> plane) { plane_ = std::move(plane); }

  /// True until the region is fitted, and again whenever it gains an occupied cube.
  bool needs_fit() const { return needs_fit_; }
  void clear_needs_fit() { needs_fit_ = false; }

  /// Visits occupied cubes in (z, y, x) order, skipping layers outside the
  /// occupied height range.
  template <class F>
  void for_each_occupied(F&& f) const {
    if (occupied_count_ == 0) {
      return;
    }
    visit_occupied(z_min_index_ - key_.z, z_max_index_ - key_.z, f);
  }

 private:
  template <class F>
  void visit_occupied(std::int32_t z_lo, std::int32_t z_hi, F& f) const {
    for (std::int32_t z = z_lo; z <= z_hi; ++z) {
      for (std::int32_t y = 0; y < side_; ++y) {
        for (std::int32_t x = 0; x < side_; ++x) {
          const CubeIndex c{x, y, z};
          const Cube& cube = cubes_[slot(c)];
          if (cube.occupied()) {
            f(c, cube);
          }
        }
      }
    }
  }

  std::size_t slot(const CubeIndex& c) const {
    return static_cast<std::size_t>(c.x + side_ * (c.y + side_ * c.z));
  }
  void add_height(std::int32_t iz);
  void recompute_stats();

  RegionIndex key_;
  std::int32_t side_;
  std::vector<Cube> cubes_;
  int present_count_ = 0;
  int occupied_count_ = 0;
  int ground_count_ = 0;
  std::int32_t z_min_index_ = 0;
  std::int32_t z_max_index_ = 0;
  std::int64_t z_index_sum_ = 0;
  std::optional<Plane> plane_;
  bool needs_fit_ = true;
};

}  // namespace rhmap
