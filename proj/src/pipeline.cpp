#include "rhmap/pipeline.hpp"

#include <chrono>
#include <filesystem>

#include "rhmap/io.hpp"
#include "rhmap/range_image.hpp"
#include "rhmap/scenes.hpp"

namespace rhmap {

Pipeline::Pipeline(const PipelineConfig& config)
    : config_(config), map_(config.map), queue_(config.backend.queue_capacity) {
  config_.validate();
}

FrameReport Pipeline::process(const Scan& scan, const Pose& pose) {
  const auto start = std::chrono::steady_clock::now();
  FrameReport report;
  report.frame = frame_++;
  report.points = scan.size();

  validate_scan(scan);
  const std::vector<Eigen::Vector3d> world = transform_scan(scan, pose);
  for (const Eigen::Vector3d& p : world) {
    map_.insert_point(p);
  }
  report.ground = r_gpe(map_, world, config_.fresher.ground);

  const std::size_t ground_removed_before = map_.ground_cubes_removed();
  report.front = s2m_removal(map_, scan, world, config_.fresher);

  if (config_.backend_enabled) {
    const RangeImage image = build_range_image(scan, config_.fresher.range_image);
    const KeyframeStamp stamp{pose, scan.timestamp, information_content(image, config_.r_max)};
    report.info_content = stamp.info_content;
    if (keyframe_select(history_, stamp, config_.backend)) {
      history_.push_back(stamp);
      queue_.push(Keyframe{scan, stamp});
      report.keyframe = true;
    }
    for (const RemovalReport& r :
         backend_step(map_, queue_, pose, config_.backend, config_.fresher)) {
      report.back += r;
    }
  }
  map_.refresh_dirty_columns();
  report.ground_cubes_lost = map_.ground_cubes_removed() - ground_removed_before;
  report.occupied_cubes = map_.occupied_cube_count();
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

KittiSource::KittiSource(const std::filesystem::path& scans_dir,
                         const std::filesystem::path& poses_file,
                         const std::filesystem::path& labels_dir)
    : scans_(list_files(scans_dir, ".bin")), poses_(read_poses(poses_file).poses) {
  if (poses_.size() < scans_.size()) {
    throw FormatError(poses_file.string() + ": " + std::to_string(poses_.size()) +
                      " poses for " + std::to_string(scans_.size()) + " scans");
  }
  if (!labels_dir.empty()) {
    labels_ = list_files(labels_dir, ".label");
    if (labels_.size() != scans_.size()) {
      throw FormatError(labels_dir.string() + ": " + std::to_string(labels_.size()) +
                        " label files for " + std::to_string(scans_.size()) + " scans");
    }
  }
}

FrameError::FrameError(std::size_t frame, const std::string& what)
    : FormatError("frame " + std::to_string(frame) + ": " + what), frame_(frame) {}

LabeledFrame KittiSource::load(std::size_t index) const {
  try {
    LabeledFrame f;
    f.scan = read_kitti_scan(scans_.at(index));
    f.scan.timestamp = 0.1 * static_cast<double>(index);
    f.pose = poses_.at(index);
    if (!labels_.empty()) {
      f.dynamic = read_labels(labels_[index], f.scan.size(), default_moving_classes());
    }
    return f;
  } catch (const FormatError& e) {
    throw FrameError(index, e.what());
  }
}

SyntheticSource::SyntheticSource(SceneSpec spec, std::uint64_t seed)
    : spec_(std::move(spec)), seed_(seed) {
  spec_.validate();
}

LabeledFrame SyntheticSource::load(std::size_t index) const {
  SyntheticFrame s = render_frame(spec_, static_cast<int>(index), seed_);
  return {std::move(s.scan), s.pose, std::move(s.dynamic)};
}

RunResult run_pipeline(const PipelineConfig& config, const FrameSource& source) {
  Pipeline pipeline(config);
  GroundTruthTally truth(config.map);
  RunResult result{RHMap(config.map), {}, std::nullopt};
  for (std::size_t i = 0; i < source.size(); ++i) {
    const LabeledFrame frame = source.load(i);
    result.reports.push_back(pipeline.process(frame.scan, frame.pose));
    if (source.labeled()) {
      for (std::size_t k = 0; k < frame.scan.size(); ++k) {
        truth.add(frame.pose.apply(frame.scan.points[k].cast<double>()), frame.dynamic[k] != 0);
      }
    }
  }
  if (source.labeled()) {
    EvalResult eval = truth.evaluate(pipeline.map());
    if (!result.reports.empty()) {
      std::vector<double> ms;
      for (const FrameReport& r : result.reports) {
        ms.push_back(r.elapsed_ms);
      }
      const TimingReport t = timing_report(ms);
      eval.mean_ms = t.mean_ms;
      eval.hz = t.hz;
    }
    result.eval = eval;
  }
  result.map = std::move(pipeline.map());
  return result;
}

std::unique_ptr<FrameSource> make_source(const PipelineConfig& config) {
  if (!config.synthetic_spec.empty()) {
    const std::string name = config.synthetic_spec.string();
    for (const std::string& builtin : builtin_scene_names()) {
      if (name == builtin) {
        return std::make_unique<SyntheticSource>(builtin_scene(name), config.seed);
      }
    }
    return std::make_unique<SyntheticSource>(load_scene_spec(config.synthetic_spec), config.seed);
  }
  if (config.scans_dir.empty() || config.poses_file.empty()) {
    throw std::invalid_argument("need either a synthetic scene or both scans and poses");
  }
  return std::make_unique<KittiSource>(config.scans_dir, config.poses_file, config.labels_dir);
}

}  // namespace rhmap
