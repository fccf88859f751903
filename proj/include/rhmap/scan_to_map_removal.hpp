#pragma once

#include <cstddef>
#include <span>

#include <Eigen/Core>

#include "rhmap/geometry.hpp"
#include "rhmap/ground_estimation.hpp"
#include "rhmap/range_image.hpp"
#include "rhmap/rh_map.hpp"

namespace rhmap {

/// Front-end tunables: removal thresholds, range-image geometry and the
/// sup/inf search.
struct ScanFresherConfig {
  double delta1 = 0.2;
  double delta2 = 0.2;
  double eps_div = 1e-6;
  /// Columns and regions holding fewer scan points than this are not judged.
  std::uint32_t min_support = 3;
  RangeImageConfig range_image;
  SupInfConfig sup_inf;
  GroundConfig ground;

  void validate() const;
};

struct RemovalReport {
  std::size_t columns_flagged = 0;
  std::size_t regions_flagged = 0;
  std::size_t cubes_removed = 0;
  std::size_t ground_cubes_added = 0;
  double elapsed_ms = 0.0;

  RemovalReport& operator+=(const RemovalReport& other);
};

/// Scan-to-map removal: compares the scan's 2D and 3D scan contexts against
/// the map and deletes the non-ground cubes of every column whose ratio1 falls
/// below delta1 and every candidate region whose ratio2 falls below delta2.
/// Never inserts points.
RemovalReport s2m_removal(RHMap& map, const Scan& scan, const Pose& pose,
                          const ScanFresherConfig& cfg);

/// Same, reusing world-frame points already computed for `scan`.
RemovalReport s2m_removal(RHMap& map, const Scan& scan, std::span<const Eigen::Vector3d> world,
                          const ScanFresherConfig& cfg);

}  // namespace rhmap
