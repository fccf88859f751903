#include "rhmap/range_image.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rhmap {

void RangeImageConfig::validate() const {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("range image needs at least one row and column");
  }
  if (!(fov_up_deg > fov_down_deg)) {
    throw std::invalid_argument("fov_up_deg must exceed fov_down_deg");
  }
}

RangeImage::RangeImage(int rows, int cols)
    : rows_(rows), cols_(cols), cells_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {}

std::size_t RangeImage::filled_count() const {
  std::size_t n = 0;
  for (const Cell& c : cells_) {
    n += c.filled() ? 1 : 0;
  }
  return n;
}

RangeImage build_range_image(const Scan& scan, const RangeImageConfig& cfg) {
  cfg.validate();
  RangeImage image(cfg.rows, cfg.cols);
  constexpr double kDeg = std::numbers::pi / 180.0;
  const double down = cfg.fov_down_deg * kDeg;
  const double span = (cfg.fov_up_deg - cfg.fov_down_deg) * kDeg;
  const double two_pi = 2.0 * std::numbers::pi;
  const bool use_rings = scan.has_rings();

  for (std::size_t i = 0; i < scan.points.size(); ++i) {
    const Eigen::Vector3d p = scan.points[i].cast<double>();
    const double range = p.norm();
    if (!(range > 0.0)) {
      image.count_dropped();
      continue;
    }
    int row;
    if (use_rings && scan.rings[i] < cfg.rows) {
      row = scan.rings[i];
    } else {
      const double elevation = std::asin(std::clamp(p.z() / range, -1.0, 1.0));
      const double u = (elevation - down) / span;
      if (u < 0.0 || u > 1.0) {
        image.count_dropped();
        continue;
      }
      row = std::min(static_cast<int>(u * cfg.rows), cfg.rows - 1);
    }
    double azimuth = std::atan2(p.y(), p.x());
    if (azimuth < 0.0) {
      azimuth += two_pi;
    }
    const int col = static_cast<int>(azimuth / two_pi * cfg.cols) % cfg.cols;

    RangeImage::Cell& cell = image.at(row, col);
    if (!cell.filled() || range < cell.range) {
      cell.range = static_cast<float>(range);
      cell.height = static_cast<float>(p.z());
      cell.point = static_cast<std::int32_t>(i);
    }
  }
  return image;
}

std::vector<std::int32_t> extract_max_ring(const RangeImage& image) {
  std::vector<std::int32_t> ids;
  ids.reserve(static_cast<std::size_t>(image.cols()));
  for (int col = 0; col < image.cols(); ++col) {
    const RangeImage::Cell* best = nullptr;
    for (int row = 0; row < image.rows(); ++row) {
      const auto& cell = image.at(row, col);
      if (cell.filled() && (best == nullptr || cell.range > best->range)) {
        best = &cell;
      }
    }
    if (best != nullptr) {
      ids.push_back(best->point);
    }
  }
  return ids;
}

namespace {

bool is_jump(double current, double neighbor, double threshold, JumpConvention convention) {
  switch (convention) {
    case JumpConvention::kAbsolute:
      return std::abs(current - neighbor) > threshold;
    case JumpConvention::kCurrentMinusNeighbor:
      return current - neighbor > threshold;
    case JumpConvention::kNeighborMinusCurrent:
      return neighbor - current > threshold;
  }
  return false;
}

/// First filled cell in direction `step` whose range jumps past `threshold`.
const RangeImage::Cell* find_bound(const RangeImage& image, int row, int col, int step,
                                   double threshold, const SupInfConfig& cfg) {
  const double current = image.at(row, col).range;
  for (int t = 1; t <= cfg.max_search; ++t) {
    const int r = row + step * t;
    if (r < 0 || r >= image.rows()) {
      break;
    }
    const auto& cell = image.at(r, col);
    if (cell.filled() && is_jump(current, cell.range, threshold, cfg.convention)) {
      return &cell;
    }
  }
  return nullptr;
}

}  // namespace

SupInfPoints extract_sup_inf(const RangeImage& image, const SupInfConfig& cfg) {
  SupInfPoints out;
  for (int col = 0; col < image.cols(); ++col) {
    for (int row = 0; row < image.rows(); ++row) {
      const auto& cell = image.at(row, col);
      if (!cell.filled()) {
        continue;
      }
      if (const auto* up = find_bound(image, row, col, +1, cfg.r_sup, cfg)) {
        if (!cfg.ordered_bounds || up->height >= cell.height) {
          out.sup.push_back({cell.point, up->point});
        }
      }
      if (const auto* down = find_bound(image, row, col, -1, cfg.r_inf, cfg)) {
        if (!cfg.ordered_bounds || down->height <= cell.height) {
          out.inf.push_back({cell.point, down->point});
        }
      }
    }
  }
  return out;
}

}  // namespace rhmap
