#pragma once

#include <cstdint>
#include <vector>

#include "rhmap/geometry.hpp"

namespace rhmap {

struct RangeImageConfig {
  int rows = 64;
  int cols = 1080;
  double fov_down_deg = -24.8;
  double fov_up_deg = 2.0;

  void validate() const;
};

/// Organized projection of a scan. Row 0 is the lowest elevation, column 0
/// starts at azimuth 0 (the +x axis) and azimuth grows counter-clockwise.
class RangeImage {
 public:
  struct Cell {
    float range = 0.0F;   // 0 marks an empty cell
    float height = 0.0F;  // sensor-frame z of the stored point
    std::int32_t point = -1;

    bool filled() const { return point >= 0; }
  };

  RangeImage(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Cell& at(int row, int col) const { return cells_[index(row, col)]; }
  Cell& at(int row, int col) { return cells_[index(row, col)]; }

  std::size_t filled_count() const;
  /// Points rejected because they fell outside the vertical field of view or
  /// sat at the sensor origin.
  std::size_t dropped() const { return dropped_; }
  void count_dropped() { ++dropped_; }

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(col);
  }

  int rows_;
  int cols_;
  std::vector<Cell> cells_;
  std::size_t dropped_ = 0;
};

/// Projects each point to (row, col) by elevation and azimuth; the nearer
/// point wins a shared cell. When the scan carries ring ids below `rows`,
/// the ring id is used as the row.
RangeImage build_range_image(const Scan& scan, const RangeImageConfig& cfg);

/// Max ring: for every image column, the id of the farthest filled cell's
/// point. Empty columns contribute nothing. Ids are ordered by column.
std::vector<std::int32_t> extract_max_ring(const RangeImage& image);

/// Sign convention for the vertical range-jump test used by extract_sup_inf.
enum class JumpConvention {
  kAbsolute,             // |r(i,j) - r(i±t,j)| > threshold
  kCurrentMinusNeighbor, // r(i,j) - r(i±t,j) > threshold
  kNeighborMinusCurrent, // r(i±t,j) - r(i,j) > threshold
};

struct SupInfConfig {
  double r_sup = 1.0;
  double r_inf = 1.0;
  int max_search = 10;
  JumpConvention convention = JumpConvention::kAbsolute;
  /// Accept a bound only when it lies on the correct side of the point:
  /// sup above it, inf below it.
  bool ordered_bounds = true;
};

/// A point paired with the point whose height bounds it.
struct BoundPair {
  std::int32_t point = -1;
  std::int32_t bound = -1;
};

struct SupInfPoints {
  std::vector<BoundPair> sup;
  std::vector<BoundPair> inf;
};

/// Walks each filled column upward (for sup) and downward (for inf) from
/// every filled cell until a filled cell with a range jump above the threshold
/// appears, stopping at the image border or after max_search rows.
SupInfPoints extract_sup_inf(const RangeImage& image, const SupInfConfig& cfg);

}  // namespace rhmap
