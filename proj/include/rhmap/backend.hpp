#pragma once

#include <cstddef>
#include <deque>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "rhmap/geometry.hpp"
#include "rhmap/range_image.hpp"
#include "rhmap/rh_map.hpp"
#include "rhmap/scan_to_map_removal.hpp"

namespace rhmap {

struct BackendConfig {
  double dist_keyframe = 5.0;   // m
  double time_keyframe = 10.0;  // s
  double info_delta = 10.0;     // percentage points
  double dist_away = 20.0;      // m
  std::size_t queue_capacity = 50;
  std::size_t max_per_step = 1;

  void validate() const;
};

/// Pose, time and information content of a frame; enough to decide whether
/// it becomes a keyframe.
struct KeyframeStamp {
  Pose pose;
  double timestamp = 0.0;
  double info_content = 0.0;
};

struct Keyframe {
  Scan scan;
  KeyframeStamp stamp;
};

/// Percentage of the maximal per-column range coverage: the sum over image
/// columns of the largest range, over (r_max * cols). Ranges beyond r_max
/// count as r_max so the result stays within [0, 100].
double information_content(const RangeImage& image, double r_max);

/// True when there is no previous keyframe, or the candidate is far enough in
/// distance or time from the last one, or its information content changed by
/// at least info_delta.
bool keyframe_select(std::span<const KeyframeStamp> history, const KeyframeStamp& candidate,
                     const BackendConfig& cfg);

/// Bounded FIFO of keyframes, safe for one producer and one consumer on
/// different threads. Pushing into a full queue evicts the oldest entry.
class KeyframeQueue {
 public:
  explicit KeyframeQueue(std::size_t capacity);

  void push(Keyframe keyframe);
  /// Removes and returns up to `limit` keyframes, oldest first, whose pose is
  /// at least `min_distance` from `current`.
  std::vector<Keyframe> take_distant(const Pose& current, double min_distance, std::size_t limit);

  std::size_t size() const;
  std::size_t capacity() const { return capacity_; }
  std::size_t evicted() const;

 private:
  mutable std::mutex mutex_;
  std::deque<Keyframe> items_;
  std::size_t capacity_;
  std::size_t evicted_ = 0;
};

/// Re-runs scan-to-map removal for up to max_per_step queued keyframes that
/// lie at least dist_away from `current`, using their stored poses, and pops
/// them from the queue.
std::vector<RemovalReport> backend_step(RHMap& map, KeyframeQueue& queue, const Pose& current,
                                        const BackendConfig& cfg,
                                        const ScanFresherConfig& fresher);

}  // namespace rhmap
