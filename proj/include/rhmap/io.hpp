#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rhmap/geometry.hpp"
#include "rhmap/rh_map.hpp"

namespace rhmap {

/// Malformed or unreadable input. The message names the file and the byte
/// offset or line where parsing stopped.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// World-frame points with their class ids and moving flags.
struct LabeledCloud {
  std::vector<Eigen::Vector3d> points;
  std::vector<std::uint32_t> labels;
  std::vector<std::uint8_t> dynamic_mask;
};

/// SemanticKITTI moving-* classes.
std::set<std::uint32_t> default_moving_classes();

/// Little-endian float32 quadruples (x, y, z, intensity); intensity is dropped.
Scan read_kitti_scan(const std::filesystem::path& path);
void write_kitti_scan(const std::filesystem::path& path, const Scan& scan);

struct PoseFile {
  std::vector<Pose> poses;
  /// 1-based line numbers whose rotation was re-orthonormalized.
  std::vector<std::size_t> reorthonormalized_lines;
};

/// One row-major 3x4 [R | t] per line. Blank lines are skipped.
PoseFile read_poses(const std::filesystem::path& path);
void write_poses(const std::filesystem::path& path, const std::vector<Pose>& poses);

/// Raw little-endian uint32 label words.
std::vector<std::uint32_t> read_label_values(const std::filesystem::path& path);
void write_labels(const std::filesystem::path& path, const std::vector<std::uint32_t>& labels);

/// Moving mask from a label file: the low 16 bits of each word are the class.
/// Throws FormatError when the label count differs from `expected_count`.
std::vector<std::uint8_t> read_labels(const std::filesystem::path& path, std::size_t expected_count,
                                      const std::set<std::uint32_t>& moving_classes);

std::vector<std::uint8_t> moving_mask(const std::vector<std::uint32_t>& labels,
                                      const std::set<std::uint32_t>& moving_classes);

/// ASCII PLY with vertex properties x, y, z and uchar is_ground.
void write_ply(const std::filesystem::path& path, const std::vector<MapPoint>& points);
void write_map_ply(const RHMap& map, const std::filesystem::path& path);
std::vector<MapPoint> read_ply(const std::filesystem::path& path);

/// Regular files in `dir` with the given extension, sorted by name.
std::vector<std::filesystem::path> list_files(const std::filesystem::path& dir,
                                              const std::string& extension);

}  // namespace rhmap
