#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rhmap/geometry.hpp"

namespace rhmap {

/// Label words written for synthetic points (SemanticKITTI ids).
inline constexpr std::uint32_t kLabelRoad = 40;
inline constexpr std::uint32_t kLabelBuilding = 50;
inline constexpr std::uint32_t kLabelMovingCar = 252;

/// Ground plane z = height + tan(slope) * x.
struct GroundSpec {
  bool enabled = true;
  double height = 0.0;
  double slope_deg = 0.0;
};

/// Axis-aligned box translating with constant velocity; moving boxes produce
/// dynamic points.
struct BoxSpec {
  Eigen::Vector3d min = Eigen::Vector3d::Zero();
  Eigen::Vector3d max = Eigen::Vector3d::Ones();
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();

  bool moving() const { return !velocity.isZero(0.0); }
};

/// Sensor trajectory: constant linear velocity and yaw rate.
struct SensorPathSpec {
  Eigen::Vector3d start{0.0, 0.0, 1.8};
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  double yaw = 0.0;
  double yaw_rate = 0.0;
};

/// Spinning LiDAR: beams spaced evenly across the vertical field of view,
/// azimuth steps evenly around the full circle.
struct BeamSpec {
  int beams = 64;
  int azimuth_steps = 1080;
  double fov_down_deg = -24.8;
  double fov_up_deg = 2.0;
  double min_range = 0.5;
  double max_range = 80.0;
  /// Standard deviation of additive range noise, in meters.
  double range_noise = 0.0;

  double elevation(int beam) const;
  double azimuth(int step) const;
};

struct SceneSpec {
  GroundSpec ground;
  std::vector<BoxSpec> boxes;
  SensorPathSpec path;
  BeamSpec beams;
  int frames = 1;
  double frame_dt = 0.1;

  /// Throws std::invalid_argument for malformed specs, including a sensor
  /// that starts any frame inside a box.
  void validate() const;
  Pose pose_at(int frame) const;
};

struct SyntheticFrame {
  Scan scan;
  Pose pose;
  std::vector<std::uint8_t> dynamic;
  std::vector<std::uint32_t> labels;
};

/// Casts every beam of one frame against the ground and boxes and keeps the
/// nearest hit within range. Deterministic in (spec, frame, seed).
SyntheticFrame render_frame(const SceneSpec& spec, int frame, std::uint64_t seed);

std::vector<SyntheticFrame> synth_scene(const SceneSpec& spec, std::uint64_t seed);

SceneSpec load_scene_spec(const std::filesystem::path& path);
SceneSpec parse_scene_spec(const std::string& json_text);
std::string scene_spec_to_json(const SceneSpec& spec);

/// Writes velodyne/NNNNNN.bin, labels/NNNNNN.label and poses.txt under `dir`.
void write_synthetic_dataset(const SceneSpec& spec, std::uint64_t seed,
                             const std::filesystem::path& dir);

/// Standard normal deviates by Box-Muller over std::mt19937_64, whose output
/// sequence is fixed by the standard (std::normal_distribution is not).
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}
  double next();

 private:
  double next_unit();

  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

}  // namespace rhmap
