#include "rhmap/scenes.hpp"

#include <stdexcept>

namespace rhmap {

namespace {

BoxSpec box(Eigen::Vector3d min, Eigen::Vector3d max, Eigen::Vector3d velocity = {0, 0, 0}) {
  return {min, max, velocity};
}

}  // namespace

SceneSpec urban_scene() {
  SceneSpec s;
  s.frames = 200;
  s.frame_dt = 0.1;
  // Road surface sits between lattice planes so it is not split across two
  // cube layers.
  s.ground.height = 0.05;
  s.path.start = {0.0, 0.0, 1.85};
  s.path.velocity = {5.0, 0.0, 0.0};
  s.beams.range_noise = 0.01;
  // Blocks on both sides of the street; two of them line the lanes with a
  // 0.2 m gap to passing traffic.
  s.boxes.push_back(box({15.3, 7.1, 0.05}, {25.3, 12.1, 4.05}));
  s.boxes.push_back(box({40.3, -9.1, 0.05}, {48.3, -4.15, 3.55}));
  s.boxes.push_back(box({65.3, 4.15, 0.05}, {72.3, 10.1, 4.55}));
  s.boxes.push_back(box({90.3, -12.1, 0.05}, {100.3, -7.1, 3.85}));
  // Oncoming car and an overtaking car, both clear of the road surface.
  s.boxes.push_back(box({90, -3.95, 0.45}, {94.5, -2.3, 1.65}, {-8, 0, 0}));
  s.boxes.push_back(box({-20, 2.3, 0.45}, {-15.5, 3.95, 1.65}, {8, 0, 0}));
  return s;
}

SceneSpec residue_scene() {
  SceneSpec s;
  s.frames = 200;
  s.frame_dt = 0.1;
  s.ground.height = 0.05;
  s.path.start = {0.0, 0.0, 1.85};
  s.path.velocity = {6.0, 0.0, 0.0};
  s.beams.range_noise = 0.01;
  // A slow car left behind by the sensor. Its trail falls into its own
  // shadow and then into the sparse far field; it is out of range at the end.
  s.boxes.push_back(box({-8, 2.3, 0.45}, {-3.5, 3.95, 1.65}, {1.5, 0, 0}));
  return s;
}

SceneSpec throughput_scene() {
  SceneSpec s;
  s.frames = 60;
  s.frame_dt = 0.1;
  s.ground.height = 0.05;
  s.path.start = {0.0, 0.0, 1.85};
  s.path.velocity = {8.0, 0.0, 0.0};
  s.beams.azimuth_steps = 1600;
  s.beams.range_noise = 0.01;
  s.boxes.push_back(box({-40, 12, 0.05}, {120, 14, 12}));
  s.boxes.push_back(box({-40, -14, 0.05}, {120, -12, 12}));
  s.boxes.push_back(box({120, -14, 0.05}, {122, 14, 12}));
  s.boxes.push_back(box({-42, -14, 0.05}, {-40, 14, 12}));
  s.boxes.push_back(box({30, -6, 0.45}, {34.5, -4.2, 1.65}, {-6, 0, 0}));
  return s;
}

SceneSpec builtin_scene(const std::string& name) {
  if (name == "urban") return urban_scene();
  if (name == "residue") return residue_scene();
  if (name == "throughput") return throughput_scene();
  throw std::invalid_argument("unknown built-in scene '" + name + "'");
}

std::vector<std::string> builtin_scene_names() { return {"urban", "residue", "throughput"}; }

}  // namespace rhmap
