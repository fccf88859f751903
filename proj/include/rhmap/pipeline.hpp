#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "rhmap/backend.hpp"
#include "rhmap/config.hpp"
#include "rhmap/evaluation.hpp"
#include "rhmap/ground_estimation.hpp"
#include "rhmap/rh_map.hpp"
#include "rhmap/scan_to_map_removal.hpp"
#include "rhmap/synthetic.hpp"

namespace rhmap {

struct FrameReport {
  std::size_t frame = 0;
  std::size_t points = 0;
  GroundReport ground;
  RemovalReport front;
  RemovalReport back;
  bool keyframe = false;
  double info_content = 0.0;
  /// Ground cubes present before removal and missing after it.
  std::size_t ground_cubes_lost = 0;
  std::size_t occupied_cubes = 0;
  /// Wall time of the mapping phases for this frame, excluding I/O.
  double elapsed_ms = 0.0;
};

/// Per-frame driver: integrate, estimate ground, remove, then feed the
/// keyframe queue and run one back-end step.
class Pipeline {
 public:
  explicit Pipeline(const PipelineConfig& config);

  FrameReport process(const Scan& scan, const Pose& pose);

  const RHMap& map() const { return map_; }
  RHMap& map() { return map_; }
  const KeyframeQueue& queue() const { return queue_; }
  std::size_t frames_processed() const { return frame_; }

 private:
  PipelineConfig config_;
  RHMap map_;
  KeyframeQueue queue_;
  std::vector<KeyframeStamp> history_;
  std::size_t frame_ = 0;
};

struct LabeledFrame {
  Scan scan;
  Pose pose;
  /// Per-point moving flags; empty when the source has no labels.
  std::vector<std::uint8_t> dynamic;
};

class FrameSource {
 public:
  virtual ~FrameSource() = default;
  virtual std::size_t size() const = 0;
  virtual LabeledFrame load(std::size_t index) const = 0;
  virtual bool labeled() const = 0;
};

/// KITTI layout: one .bin per frame, a pose file with one line per frame and
/// optionally one .label per frame.
class KittiSource : public FrameSource {
 public:
  KittiSource(const std::filesystem::path& scans_dir, const std::filesystem::path& poses_file,
              const std::filesystem::path& labels_dir = {});

  std::size_t size() const override { return scans_.size(); }
  LabeledFrame load(std::size_t index) const override;
  bool labeled() const override { return !labels_.empty(); }

 private:
  std::vector<std::filesystem::path> scans_;
  std::vector<std::filesystem::path> labels_;
  std::vector<Pose> poses_;
};

class SyntheticSource : public FrameSource {
 public:
  SyntheticSource(SceneSpec spec, std::uint64_t seed);

  std::size_t size() const override { return static_cast<std::size_t>(spec_.frames); }
  LabeledFrame load(std::size_t index) const override;
  bool labeled() const override { return true; }

 private:
  SceneSpec spec_;
  std::uint64_t seed_;
};

/// Data errors raised while loading a frame, tagged with its index.
class FrameError : public FormatError {
 public:
  FrameError(std::size_t frame, const std::string& what);
  std::size_t frame() const { return frame_; }

 private:
  std::size_t frame_;
};

struct RunResult {
  RHMap map;
  std::vector<FrameReport> reports;
  /// Present when the source carries labels.
  std::optional<EvalResult> eval;
};

/// Runs every frame of `source`. Ground truth for evaluation is the union of
/// all labelled scan points in the world frame.
RunResult run_pipeline(const PipelineConfig& config, const FrameSource& source);

/// Builds the frame source named by the config: a synthetic spec (a JSON file
/// or a built-in scene name) or a KITTI scans directory plus pose file.
std::unique_ptr<FrameSource> make_source(const PipelineConfig& config);

}  // namespace rhmap
