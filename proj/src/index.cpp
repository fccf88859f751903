#include "rhmap/index.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rhmap {

void MapConfig::validate() const {
  if (!(cube_size > 0.0) || !std::isfinite(cube_size)) {
    throw std::invalid_argument("cube_size must be positive");
  }
  if (mask_bits < 1 || mask_bits > 6) {
    throw std::invalid_argument("mask_bits must lie in [1, 6]");
  }
  if (table_size == 0) {
    throw std::invalid_argument("table_size must be positive");
  }
  if (!(clamp_lo < clamp_hi)) {
    throw std::invalid_argument("clamp_lo must be below clamp_hi");
  }
  if (!(log_odds_hit > 0.0)) {
    throw std::invalid_argument("log_odds_hit must be positive");
  }
}

namespace detail {

void throw_bad_coordinate(double v, int axis) {
  const char* name = axis == 0 ? "x" : (axis == 1 ? "y" : "z");
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string("non-finite ") + name + " coordinate");
  }
  throw std::invalid_argument(std::string(name) + " coordinate out of index range");
}

}  // namespace detail

IndexTriple point_to_indices(const Eigen::Vector3d& p, const MapConfig& cfg) {
  const GlobalIndex g = global_index(p, cfg.cube_size);
  const std::int32_t m = cfg.mask();
  return {g, region_of(g, m), cube_of(g, m)};
}

Eigen::Vector3d cube_center(const GlobalIndex& i, double cube_size) {
  return {cube_center_z(i.x, cube_size), cube_center_z(i.y, cube_size),
          cube_center_z(i.z, cube_size)};
}

std::uint64_t spatial_hash(std::int32_t x, std::int32_t y, std::int32_t z,
                           const HashPrimes& primes) {
  const auto widen = [](std::int32_t v) {
    return static_cast<std::uint64_t>(static_cast<std::int64_t>(v));
  };
  return (widen(x) * primes.x) ^ (widen(y) * primes.y) ^ (widen(z) * primes.z);
}

}  // namespace rhmap
