#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include <Eigen/Core>
#include <absl/container/flat_hash_map.h>

#include "rhmap/index.hpp"
#include "rhmap/io.hpp"
#include "rhmap/rh_map.hpp"

namespace rhmap {

/// Preservation and rejection counts plus the derived rates. A rate is absent
/// when its denominator is zero.
struct EvalResult {
  std::uint64_t n_sta = 0;
  std::uint64_t n_dyn = 0;
  std::uint64_t n_tn = 0;
  std::uint64_t n_tp = 0;
  std::optional<double> pr;
  std::optional<double> rr;
  std::optional<double> f1;
  double mean_ms = 0.0;
  double hz = 0.0;

  /// Fills pr, rr and f1 from the counts.
  void finalize();
};

/// Harmonic mean of PR and RR; 0 when both are 0.
double f1_score(double pr, double rr);

struct TimingReport {
  double mean_ms = 0.0;
  double hz = 0.0;
};

/// Mean frame time and the implied rate. Throws on an empty span.
TimingReport timing_report(std::span<const double> frame_ms);

/// Ground-truth points accumulated per cube, so long sequences are evaluated
/// without keeping every point.
class GroundTruthTally {
 public:
  explicit GroundTruthTally(const MapConfig& config) : config_(config) {}

  void add(const Eigen::Vector3d& world_point, bool dynamic);
  void add(const LabeledCloud& cloud);

  std::uint64_t static_points() const { return n_sta_; }
  std::uint64_t dynamic_points() const { return n_dyn_; }
  std::size_t cube_count() const { return cubes_.size(); }

  /// Counts against the occupied cubes of `map`.
  EvalResult evaluate(const RHMap& map) const;
  /// Same, against a set of occupied cube indices (for example a parsed PLY).
  template <class IsOccupied>
  EvalResult evaluate_with(IsOccupied&& occupied) const {
    EvalResult r;
    r.n_sta = n_sta_;
    r.n_dyn = n_dyn_;
    for (const auto& [cube, tally] : cubes_) {
      if (occupied(cube)) {
        r.n_tn += tally.static_count;
        r.n_tp += tally.dynamic_count;
      }
    }
    r.finalize();
    return r;
  }

 private:
  struct Counts {
    std::uint64_t static_count = 0;
    std::uint64_t dynamic_count = 0;
  };

  MapConfig config_;
  absl::flat_hash_map<GlobalIndex, Counts> cubes_;
  std::uint64_t n_sta_ = 0;
  std::uint64_t n_dyn_ = 0;
};

/// Per-point evaluation: every ground-truth point is looked up in the map.
EvalResult evaluate(const RHMap& map, const LabeledCloud& truth);

}  // namespace rhmap
