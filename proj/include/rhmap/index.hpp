#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>

#include <Eigen/Core>

#include "rhmap/map_config.hpp"

namespace rhmap {

/// Integer voxel coordinates in cube units. The tag keeps global, region and
/// in-region cube indices from being mixed up.
template <class Tag>
struct Index3 {
  std::int32_t x = 0;
  std::int32_t y = 0;
  std::int32_t z = 0;

  friend constexpr bool operator==(const Index3&, const Index3&) = default;
  friend constexpr auto operator<=>(const Index3&, const Index3&) = default;

  template <class H>
  friend H AbslHashValue(H h, const Index3& i) {
    return H::combine(std::move(h), i.x, i.y, i.z);
  }
};

/// 2D (x, y) projection of an Index3.
template <class Tag>
struct Index2 {
  std::int32_t x = 0;
  std::int32_t y = 0;

  friend constexpr bool operator==(const Index2&, const Index2&) = default;
  friend constexpr auto operator<=>(const Index2&, const Index2&) = default;

  template <class H>
  friend H AbslHashValue(H h, const Index2& o) {
    return H::combine(std::move(h), o.x, o.y);
  }
};

struct GlobalTag {};
struct RegionTag {};
struct CubeTag {};

/// Full index I = floor(p / cube_size).
using GlobalIndex = Index3<GlobalTag>;
/// I_r = I & ~m: the region's lowest corner, still in cube units.
using RegionIndex = Index3<RegionTag>;
/// I_c = I & m: offset of the cube inside its region.
using CubeIndex = Index3<CubeTag>;
/// O: 2D global column at cube resolution.
using ColumnIndex = Index2<GlobalTag>;
/// O_r: 2D region column.
using RegionColumn = Index2<RegionTag>;

struct IndexTriple {
  GlobalIndex global;
  RegionIndex region;
  CubeIndex cube;
};

/// Converts a metric point to its global, region and cube indices.
/// Throws std::invalid_argument for non-finite coordinates or coordinates
/// whose index does not fit in 32 bits.
IndexTriple point_to_indices(const Eigen::Vector3d& p, const MapConfig& cfg);

namespace detail {

[[noreturn]] void throw_bad_coordinate(double v, int axis);

/// floor(v / cube_size) as int32. The range test also rejects NaN.
inline std::int32_t axis_index(double v, double cube_size, int axis) {
  const double q = v / cube_size;
  if (!(q >= -2147483648.0 && q < 2147483648.0)) {
    throw_bad_coordinate(v, axis);
  }
  const auto t = static_cast<std::int32_t>(q);  // truncates toward zero
  return static_cast<double>(t) > q ? t - 1 : t;
}

}  // namespace detail

inline GlobalIndex global_index(const Eigen::Vector3d& p, double cube_size) {
  return {detail::axis_index(p.x(), cube_size, 0), detail::axis_index(p.y(), cube_size, 1),
          detail::axis_index(p.z(), cube_size, 2)};
}

constexpr RegionIndex region_of(const GlobalIndex& i, std::int32_t mask) {
  return {i.x & ~mask, i.y & ~mask, i.z & ~mask};
}

constexpr CubeIndex cube_of(const GlobalIndex& i, std::int32_t mask) {
  return {i.x & mask, i.y & mask, i.z & mask};
}

/// I = I_r | I_c. Valid because I_r and I_c have disjoint bits.
constexpr GlobalIndex compose(const RegionIndex& r, const CubeIndex& c) {
  return {r.x | c.x, r.y | c.y, r.z | c.z};
}

template <class Tag>
constexpr Index2<Tag> column_of(const Index3<Tag>& i) {
  return {i.x, i.y};
}

constexpr RegionColumn region_column_of(const ColumnIndex& o, std::int32_t mask) {
  return {o.x & ~mask, o.y & ~mask};
}

/// Metric center of a cube: (I + 0.5) * cube_size per axis.
Eigen::Vector3d cube_center(const GlobalIndex& i, double cube_size);

inline double cube_center_z(std::int32_t iz, double cube_size) {
  return (static_cast<double>(iz) + 0.5) * cube_size;
}

/// Bucket of an index: ((x*n_x) xor (y*n_y) xor (z*n_z)) mod N.
///
/// Signed coordinates are sign-extended to 64 bits and reinterpreted as
/// unsigned; products wrap modulo 2^64.
std::uint64_t spatial_hash(std::int32_t x, std::int32_t y, std::int32_t z,
                           const HashPrimes& primes);

template <class Tag>
std::uint64_t hash_index(const Index3<Tag>& i, const HashPrimes& primes,
                         std::uint64_t bucket_count) {
  return spatial_hash(i.x, i.y, i.z, primes) % bucket_count;
}

template <class Tag>
std::uint64_t hash_index(const Index3<Tag>& i, const MapConfig& cfg) {
  return hash_index(i, cfg.primes, cfg.table_size);
}

/// Hash functor for 2D indices used by the side tables.
struct Index2Hash {
  template <class Tag>
  std::size_t operator()(const Index2<Tag>& o) const {
    return static_cast<std::size_t>(spatial_hash(o.x, o.y, 0, HashPrimes{}));
  }
};

struct Index3Hash {
  template <class Tag>
  std::size_t operator()(const Index3<Tag>& i) const {
    return static_cast<std::size_t>(spatial_hash(i.x, i.y, i.z, HashPrimes{}));
  }
};

}  // namespace rhmap
