#include "rhmap/evaluation.hpp"

#include <numeric>
#include <stdexcept>

namespace rhmap {

void EvalResult::finalize() {
  pr.reset();
  rr.reset();
  f1.reset();
  if (n_sta > 0) {
    pr = static_cast<double>(n_tn) / static_cast<double>(n_sta);
  }
  if (n_dyn > 0) {
    rr = 1.0 - static_cast<double>(n_tp) / static_cast<double>(n_dyn);
  }
  if (pr && rr) {
    f1 = f1_score(*pr, *rr);
  }
}

double f1_score(double pr, double rr) {
  const double sum = pr + rr;
  return sum > 0.0 ? 2.0 * pr * rr / sum : 0.0;
}

TimingReport timing_report(std::span<const double> frame_ms) {
  if (frame_ms.empty()) {
    throw std::invalid_argument("timing report needs at least one frame");
  }
  TimingReport t;
  t.mean_ms = std::accumulate(frame_ms.begin(), frame_ms.end(), 0.0) /
              static_cast<double>(frame_ms.size());
  t.hz = t.mean_ms > 0.0 ? 1000.0 / t.mean_ms : 0.0;
  return t;
}

void GroundTruthTally::add(const Eigen::Vector3d& world_point, bool dynamic) {
  Counts& c = cubes_[point_to_indices(world_point, config_).global];
  if (dynamic) {
    ++c.dynamic_count;
    ++n_dyn_;
  } else {
    ++c.static_count;
    ++n_sta_;
  }
}

void GroundTruthTally::add(const LabeledCloud& cloud) {
  if (cloud.dynamic_mask.size() != cloud.points.size()) {
    throw std::invalid_argument("dynamic mask and point count differ");
  }
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    add(cloud.points[i], cloud.dynamic_mask[i] != 0);
  }
}

EvalResult GroundTruthTally::evaluate(const RHMap& map) const {
  return evaluate_with([&](const GlobalIndex& i) { return map.is_occupied(i); });
}

EvalResult evaluate(const RHMap& map, const LabeledCloud& truth) {
  if (truth.dynamic_mask.size() != truth.points.size()) {
    throw std::invalid_argument("dynamic mask and point count differ");
  }
  EvalResult r;
  for (std::size_t i = 0; i < truth.points.size(); ++i) {
    const bool kept = map.is_occupied(point_to_indices(truth.points[i], map.config()).global);
    if (truth.dynamic_mask[i] != 0) {
      ++r.n_dyn;
      r.n_tp += kept ? 1 : 0;
    } else {
      ++r.n_sta;
      r.n_tn += kept ? 1 : 0;
    }
  }
  r.finalize();
  return r;
}

}  // namespace rhmap
