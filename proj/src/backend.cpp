#include "rhmap/backend.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rhmap {

void BackendConfig::validate() const {
  if (!(dist_keyframe > 0.0)) throw std::invalid_argument("dist_keyframe must be positive");
  if (!(time_keyframe > 0.0)) throw std::invalid_argument("time_keyframe must be positive");
  if (!(info_delta > 0.0)) throw std::invalid_argument("info_delta must be positive");
  if (!(dist_away > 0.0)) throw std::invalid_argument("dist_away must be positive");
  if (queue_capacity == 0) throw std::invalid_argument("queue_capacity must be positive");
  if (max_per_step == 0) throw std::invalid_argument("max_per_step must be positive");
}

double information_content(const RangeImage& image, double r_max) {
  if (!(r_max > 0.0)) {
    throw std::invalid_argument("r_max must be positive");
  }
  double sum = 0.0;
  for (int col = 0; col < image.cols(); ++col) {
    double best = 0.0;
    for (int row = 0; row < image.rows(); ++row) {
      const auto& cell = image.at(row, col);
      if (cell.filled()) {
        best = std::max(best, static_cast<double>(cell.range));
      }
    }
    sum += std::min(best, r_max);
  }
  return sum / (r_max * image.cols()) * 100.0;
}

bool keyframe_select(std::span<const KeyframeStamp> history, const KeyframeStamp& candidate,
                     const BackendConfig& cfg) {
  if (history.empty()) {
    return true;
  }
  const KeyframeStamp& last = history.back();
  return candidate.pose.distance_to(last.pose) >= cfg.dist_keyframe ||
         candidate.timestamp - last.timestamp >= cfg.time_keyframe ||
         std::abs(candidate.info_content - last.info_content) >= cfg.info_delta;
}

KeyframeQueue::KeyframeQueue(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) {
    throw std::invalid_argument("keyframe queue capacity must be positive");
  }
}

void KeyframeQueue::push(Keyframe keyframe) {
  std::lock_guard lock(mutex_);
  if (items_.size() == capacity_) {
    items_.pop_front();
    ++evicted_;
  }
  items_.push_back(std::move(keyframe));
}

std::vector<Keyframe> KeyframeQueue::take_distant(const Pose& current, double min_distance,
                                                  std::size_t limit) {
  std::lock_guard lock(mutex_);
  std::vector<Keyframe> out;
  for (auto it = items_.begin(); it != items_.end() && out.size() < limit;) {
    if (it->stamp.pose.distance_to(current) >= min_distance) {
      out.push_back(std::move(*it));
      it = items_.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

std::size_t KeyframeQueue::size() const {
  std::lock_guard lock(mutex_);
  return items_.size();
}

std::size_t KeyframeQueue::evicted() const {
  std::lock_guard lock(mutex_);
  return evicted_;
}

std::vector<RemovalReport> backend_step(RHMap& map, KeyframeQueue& queue, const Pose& current,
                                        const BackendConfig& cfg,
                                        const ScanFresherConfig& fresher) {
  std::vector<RemovalReport> reports;
  for (const Keyframe& kf : queue.take_distant(current, cfg.dist_away, cfg.max_per_step)) {
    reports.push_back(s2m_removal(map, kf.scan, kf.stamp.pose, fresher));
  }
  return reports;
}

}  // namespace rhmap
