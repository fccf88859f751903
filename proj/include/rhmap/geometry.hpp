#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace rhmap {

/// Rigid sensor-to-world transform.
struct Pose {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  static Pose identity() { return {}; }
  static Pose from_yaw(double yaw, const Eigen::Vector3d& translation);

  Eigen::Vector3d apply(const Eigen::Vector3d& p) const { return rotation * p + translation; }
  /// R R^T = I and det R = +1, both within `tolerance`.
  bool is_valid(double tolerance = 1e-6) const;
  double distance_to(const Pose& other) const {
    return (translation - other.translation).norm();
  }
};

/// One LiDAR sweep in the sensor frame.
struct Scan {
  std::vector<Eigen::Vector3f> points;
  /// Optional beam index per point, 0 being the lowest beam. Empty when unknown.
  std::vector<std::uint16_t> rings;
  double timestamp = 0.0;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  bool has_rings() const { return !rings.empty() && rings.size() == points.size(); }
};

/// p_W = R p_B + t for every point.
std::vector<Eigen::Vector3d> transform_scan(const Scan& scan, const Pose& pose);

/// Throws std::invalid_argument when a coordinate is non-finite.
void validate_scan(const Scan& scan);

}  // namespace rhmap
