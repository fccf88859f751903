#include "rhmap/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "rhmap/io.hpp"

namespace rhmap {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

/// Nearest positive hit of a ray with an axis-aligned box (slab test).
std::optional<double> intersect_box(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir,
                                    const Eigen::Vector3d& lo, const Eigen::Vector3d& hi) {
  double t_near = -std::numeric_limits<double>::infinity();
  double t_far = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    if (std::abs(dir(a)) < 1e-12) {
      if (origin(a) < lo(a) || origin(a) > hi(a)) {
        return std::nullopt;
      }
      continue;
    }
    double t0 = (lo(a) - origin(a)) / dir(a);
    double t1 = (hi(a) - origin(a)) / dir(a);
    if (t0 > t1) {
      std::swap(t0, t1);
    }
    t_near = std::max(t_near, t0);
    t_far = std::min(t_far, t1);
    if (t_near > t_far) {
      return std::nullopt;
    }
  }
  if (t_far <= 0.0) {
    return std::nullopt;
  }
  return t_near > 0.0 ? t_near : t_far;
}

std::uint64_t frame_seed(std::uint64_t seed, int frame) {
  return seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(frame) + 1));
}

}  // namespace

double NormalSampler::next_unit() {
  // 53 random bits mapped to (0, 1].
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double NormalSampler::next() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  const double u1 = next_unit();
  const double u2 = next_unit();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

double BeamSpec::elevation(int beam) const {
  const double step = (fov_up_deg - fov_down_deg) / beams;
  return (fov_down_deg + (beam + 0.5) * step) * kDeg;
}

double BeamSpec::azimuth(int step) const {
  return (step + 0.5) * 2.0 * std::numbers::pi / azimuth_steps;
}

void SceneSpec::validate() const {
  if (frames < 0) throw std::invalid_argument("frames must be non-negative");
  if (!(frame_dt > 0.0)) throw std::invalid_argument("frame_dt must be positive");
  if (beams.beams < 1 || beams.azimuth_steps < 1) {
    throw std::invalid_argument("beam model needs at least one beam and azimuth step");
  }
  if (!(beams.fov_up_deg > beams.fov_down_deg)) {
    throw std::invalid_argument("fov_up_deg must exceed fov_down_deg");
  }
  if (!(beams.max_range > beams.min_range) || beams.min_range < 0.0) {
    throw std::invalid_argument("max_range must exceed min_range >= 0");
  }
  if (beams.range_noise < 0.0) throw std::invalid_argument("range_noise must be non-negative");
  for (std::size_t b = 0; b < boxes.size(); ++b) {
    if (!(boxes[b].min.array() < boxes[b].max.array()).all()) {
      throw std::invalid_argument("box " + std::to_string(b) + " has min >= max");
    }
  }
  for (int f = 0; f < frames; ++f) {
    const Eigen::Vector3d s = pose_at(f).translation;
    const double t = f * frame_dt;
    for (std::size_t b = 0; b < boxes.size(); ++b) {
      const Eigen::Vector3d lo = boxes[b].min + boxes[b].velocity * t;
      const Eigen::Vector3d hi = boxes[b].max + boxes[b].velocity * t;
      if ((s.array() >= lo.array()).all() && (s.array() <= hi.array()).all()) {
        throw std::invalid_argument("sensor inside box " + std::to_string(b) + " at frame " +
                                    std::to_string(f));
      }
    }
  }
}

Pose SceneSpec::pose_at(int frame) const {
  const double t = frame * frame_dt;
  return Pose::from_yaw(path.yaw + path.yaw_rate * t, path.start + path.velocity * t);
}

SyntheticFrame render_frame(const SceneSpec& spec, int frame, std::uint64_t seed) {
  SyntheticFrame out;
  out.pose = spec.pose_at(frame);
  const double t = frame * spec.frame_dt;
  out.scan.timestamp = t;

  std::vector<Eigen::Vector3d> lo;
  std::vector<Eigen::Vector3d> hi;
  for (const BoxSpec& box : spec.boxes) {
    lo.push_back(box.min + box.velocity * t);
    hi.push_back(box.max + box.velocity * t);
  }

  const BeamSpec& beams = spec.beams;
  const Eigen::Vector3d origin = out.pose.translation;
  const double slope = std::tan(spec.ground.slope_deg * kDeg);
  NormalSampler noise(frame_seed(seed, frame));
  const std::size_t rays = static_cast<std::size_t>(beams.beams) * beams.azimuth_steps;
  out.scan.points.reserve(rays);
  out.scan.rings.reserve(rays);

  for (int k = 0; k < beams.beams; ++k) {
    const double elev = beams.elevation(k);
    const double ce = std::cos(elev);
    const double se = std::sin(elev);
    for (int j = 0; j < beams.azimuth_steps; ++j) {
      const double az = beams.azimuth(j);
      const Eigen::Vector3d dir_sensor(ce * std::cos(az), ce * std::sin(az), se);
      const Eigen::Vector3d dir = out.pose.rotation * dir_sensor;

      double best = beams.max_range;
      int hit = -1;  // -1 none, -2 ground, else box index
      if (spec.ground.enabled) {
        const double denom = dir.z() - slope * dir.x();
        if (std::abs(denom) > 1e-12) {
          const double tg = (spec.ground.height + slope * origin.x() - origin.z()) / denom;
          if (tg > 0.0 && tg < best) {
            best = tg;
            hit = -2;
          }
        }
      }
      for (std::size_t b = 0; b < lo.size(); ++b) {
        if (auto tb = intersect_box(origin, dir, lo[b], hi[b]); tb && *tb < best) {
          best = *tb;
          hit = static_cast<int>(b);
        }
      }
      if (hit == -1) {
        continue;
      }
      double range = best;
      if (beams.range_noise > 0.0) {
        range += beams.range_noise * noise.next();
      }
      if (range < beams.min_range || range > beams.max_range) {
        continue;
      }
      out.scan.points.push_back((dir_sensor * range).cast<float>());
      out.scan.rings.push_back(static_cast<std::uint16_t>(k));
      const bool moving = hit >= 0 && spec.boxes[static_cast<std::size_t>(hit)].moving();
      out.dynamic.push_back(moving ? 1 : 0);
      out.labels.push_back(hit == -2 ? kLabelRoad : (moving ? kLabelMovingCar : kLabelBuilding));
    }
  }
  return out;
}

std::vector<SyntheticFrame> synth_scene(const SceneSpec& spec, std::uint64_t seed) {
  spec.validate();
  std::vector<SyntheticFrame> frames;
  frames.reserve(static_cast<std::size_t>(spec.frames));
  for (int f = 0; f < spec.frames; ++f) {
    frames.push_back(render_frame(spec, f, seed));
  }
  return frames;
}

namespace {

using nlohmann::json;

Eigen::Vector3d vec3(const json& j, const char* key) {
  if (!j.is_array() || j.size() != 3) {
    throw std::invalid_argument(std::string("scene key '") + key + "' must be a 3-element array");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json to_array(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

void check_keys(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  if (!j.is_object()) {
    throw std::invalid_argument(std::string("scene section '") + where + "' must be an object");
  }
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) {
      known = known || key == a;
    }
    if (!known) {
      throw std::invalid_argument(std::string("unknown scene key '") + key + "' in " + where);
    }
  }
}

}  // namespace

SceneSpec parse_scene_spec(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("scene spec is not valid JSON: ") + e.what());
  }
  SceneSpec spec;
  try {
    check_keys(root, {"frames", "frame_dt", "ground", "boxes", "path", "beams"}, "scene");
    spec.frames = root.value("frames", spec.frames);
    spec.frame_dt = root.value("frame_dt", spec.frame_dt);
    if (root.contains("ground")) {
      const json& g = root["ground"];
      check_keys(g, {"enabled", "height", "slope_deg"}, "ground");
      spec.ground.enabled = g.value("enabled", spec.ground.enabled);
      spec.ground.height = g.value("height", spec.ground.height);
      spec.ground.slope_deg = g.value("slope_deg", spec.ground.slope_deg);
    }
    if (root.contains("path")) {
      const json& p = root["path"];
      check_keys(p, {"start", "velocity", "yaw", "yaw_rate"}, "path");
      if (p.contains("start")) spec.path.start = vec3(p["start"], "start");
      if (p.contains("velocity")) spec.path.velocity = vec3(p["velocity"], "velocity");
      spec.path.yaw = p.value("yaw", spec.path.yaw);
      spec.path.yaw_rate = p.value("yaw_rate", spec.path.yaw_rate);
    }
    if (root.contains("beams")) {
      const json& b = root["beams"];
      check_keys(b,
                 {"beams", "azimuth_steps", "fov_down_deg", "fov_up_deg", "min_range", "max_range",
                  "range_noise"},
                 "beams");
      spec.beams.beams = b.value("beams", spec.beams.beams);
      spec.beams.azimuth_steps = b.value("azimuth_steps", spec.beams.azimuth_steps);
      spec.beams.fov_down_deg = b.value("fov_down_deg", spec.beams.fov_down_deg);
      spec.beams.fov_up_deg = b.value("fov_up_deg", spec.beams.fov_up_deg);
      spec.beams.min_range = b.value("min_range", spec.beams.min_range);
      spec.beams.max_range = b.value("max_range", spec.beams.max_range);
      spec.beams.range_noise = b.value("range_noise", spec.beams.range_noise);
    }
    if (root.contains("boxes")) {
      for (const json& b : root["boxes"]) {
        check_keys(b, {"min", "max", "velocity"}, "box");
        BoxSpec box;
        box.min = vec3(b.at("min"), "min");
        box.max = vec3(b.at("max"), "max");
        if (b.contains("velocity")) box.velocity = vec3(b["velocity"], "velocity");
        spec.boxes.push_back(box);
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad scene spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

SceneSpec load_scene_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scene_spec(text.str());
}

std::string scene_spec_to_json(const SceneSpec& spec) {
  json root;
  root["frames"] = spec.frames;
  root["frame_dt"] = spec.frame_dt;
  root["ground"] = {{"enabled", spec.ground.enabled},
                    {"height", spec.ground.height},
                    {"slope_deg", spec.ground.slope_deg}};
  root["path"] = {{"start", to_array(spec.path.start)},
                  {"velocity", to_array(spec.path.velocity)},
                  {"yaw", spec.path.yaw},
                  {"yaw_rate", spec.path.yaw_rate}};
  root["beams"] = {{"beams", spec.beams.beams},
                   {"azimuth_steps", spec.beams.azimuth_steps},
                   {"fov_down_deg", spec.beams.fov_down_deg},
                   {"fov_up_deg", spec.beams.fov_up_deg},
                   {"min_range", spec.beams.min_range},
                   {"max_range", spec.beams.max_range},
                   {"range_noise", spec.beams.range_noise}};
  root["boxes"] = json::array();
  for (const BoxSpec& box : spec.boxes) {
    root["boxes"].push_back({{"min", to_array(box.min)},
                             {"max", to_array(box.max)},
                             {"velocity", to_array(box.velocity)}});
  }
  return root.dump(2);
}

void write_synthetic_dataset(const SceneSpec& spec, std::uint64_t seed,
                             const std::filesystem::path& dir) {
  spec.validate();
  std::filesystem::create_directories(dir / "velodyne");
  std::filesystem::create_directories(dir / "labels");
  std::vector<Pose> poses;
  char name[32];
  for (int f = 0; f < spec.frames; ++f) {
    const SyntheticFrame frame = render_frame(spec, f, seed);
    std::snprintf(name, sizeof(name), "%06d", f);
    write_kitti_scan(dir / "velodyne" / (std::string(name) + ".bin"), frame.scan);
    write_labels(dir / "labels" / (std::string(name) + ".label"), frame.labels);
    poses.push_back(frame.pose);
  }
  write_poses(dir / "poses.txt", poses);
}

}  // namespace rhmap
