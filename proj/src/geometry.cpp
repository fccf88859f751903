#include "rhmap/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Geometry>

namespace rhmap {

Pose Pose::from_yaw(double yaw, const Eigen::Vector3d& translation) {
  Pose pose;
  pose.rotation = Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()).toRotationMatrix();
  pose.translation = translation;
  return pose;
}

bool Pose::is_valid(double tolerance) const {
  if (!rotation.allFinite() || !translation.allFinite()) {
    return false;
  }
  const double ortho = (rotation * rotation.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  return ortho <= tolerance && std::abs(rotation.determinant() - 1.0) <= tolerance;
}

std::vector<Eigen::Vector3d> transform_scan(const Scan& scan, const Pose& pose) {
  std::vector<Eigen::Vector3d> out;
  out.reserve(scan.points.size());
  for (const auto& p : scan.points) {
    out.push_back(pose.apply(p.cast<double>()));
  }
  return out;
}

void validate_scan(const Scan& scan) {
  for (std::size_t i = 0; i < scan.points.size(); ++i) {
    if (!scan.points[i].allFinite()) {
      throw std::invalid_argument("non-finite coordinate in scan point " + std::to_string(i));
    }
  }
}

}  // namespace rhmap
