#pragma once

#include <cstddef>
#include <cstdint>

namespace rhmap {

/// Large primes mixed into the spatial hash, one per axis.
struct HashPrimes {
  std::uint64_t x = 73856093;
  std::uint64_t y = 19349663;
  std::uint64_t z = 83492791;
};

/// Resolution, hashing and occupancy parameters of the region-wise map.
///
/// A region spans `mask() + 1` cubes per axis, so its metric extent is
/// `(mask() + 1) * cube_size` (0.8 m with the defaults).
struct MapConfig {
  double cube_size = 0.1;
  int mask_bits = 3;
  std::size_t table_size = std::size_t{1} << 20;
  HashPrimes primes;
  double log_odds_hit = 0.85;
  double clamp_lo = -2.0;
  double clamp_hi = 3.5;
  double occupied_threshold = 0.0;

  std::int32_t mask() const { return (std::int32_t{1} << mask_bits) - 1; }
  std::int32_t cubes_per_axis() const { return mask() + 1; }
  double region_size() const { return cubes_per_axis() * cube_size; }

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

}  // namespace rhmap
