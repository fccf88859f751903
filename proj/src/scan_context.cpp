#include "rhmap/scan_context.hpp"

#include <algorithm>
#include <cmath>

namespace rhmap {

ScanContext2D build_scan_context_2d(std::span<const Eigen::Vector3d> points,
                                    std::span<const std::uint8_t> max_ring, const MapConfig& cfg) {
  ScanContext2D ctx;
  const std::int32_t m = cfg.mask();
  // Consecutive scan points usually share a column; reuse its entry.
  RegionColumn last{};
  ColumnContext* current = nullptr;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Eigen::Vector3d& p = points[i];
    const RegionColumn o = region_column_of(column_of(global_index(p, cfg.cube_size)), m);
    const bool on_ring = i < max_ring.size() && max_ring[i] != 0;
    if (current != nullptr && o == last) {
      current->z_max = std::max(current->z_max, p.z());
      current->z_min = std::min(current->z_min, p.z());
      current->has_max_ring = current->has_max_ring || on_ring;
      ++current->points;
      continue;
    }
    auto [it, inserted] = ctx.try_emplace(o, ColumnContext{p.z(), p.z(), on_ring, 1});
    current = &it->second;
    last = o;
    if (!inserted) {
      current->z_max = std::max(current->z_max, p.z());
      current->z_min = std::min(current->z_min, p.z());
      current->has_max_ring = current->has_max_ring || on_ring;
      ++current->points;
    }
  }
  return ctx;
}

namespace {

struct Accumulator {
  RegionContext ctx;
  bool has_sup = false;
  bool has_inf = false;
};

void add_member(absl::flat_hash_map<RegionIndex, Accumulator>& acc,
                const Eigen::Vector3d& p, const MapConfig& cfg, double bound, bool is_sup) {
  const RegionIndex r = region_of(global_index(p, cfg.cube_size), cfg.mask());
  auto [it, inserted] = acc.try_emplace(r);
  Accumulator& a = it->second;
  if (inserted) {
    a.ctx.z_max = p.z();
    a.ctx.z_min = p.z();
  } else {
    a.ctx.z_max = std::max(a.ctx.z_max, p.z());
    a.ctx.z_min = std::min(a.ctx.z_min, p.z());
  }
  if (is_sup) {
    a.ctx.sup = a.has_sup ? std::min(a.ctx.sup, bound) : bound;
    a.has_sup = true;
  } else {
    a.ctx.inf = a.has_inf ? std::max(a.ctx.inf, bound) : bound;
    a.has_inf = true;
  }
}

}  // namespace

ScanContext3D build_scan_context_3d(std::span<const Eigen::Vector3d> points,
                                    const SupInfPoints& bounds, const MapConfig& cfg) {
  absl::flat_hash_map<RegionIndex, Accumulator> acc;
  const auto at = [&](std::int32_t id) -> const Eigen::Vector3d& {
    return points[static_cast<std::size_t>(id)];
  };
  for (const BoundPair& b : bounds.sup) {
    add_member(acc, at(b.point), cfg, at(b.bound).z(), true);
  }
  for (const BoundPair& b : bounds.inf) {
    add_member(acc, at(b.point), cfg, at(b.bound).z(), false);
  }

  // The band of a region counts every scan point in it, not only the
  // sup/inf members that put the region into the context.
  if (!acc.empty()) {
    RegionIndex last{};
    Accumulator* current = nullptr;
    for (const auto& p : points) {
      const RegionIndex r = region_of(global_index(p, cfg.cube_size), cfg.mask());
      if (current == nullptr || !(r == last)) {
        const auto it = acc.find(r);
        current = it == acc.end() ? nullptr : &it->second;
        last = r;
        if (current == nullptr) {
          continue;
        }
      }
      current->ctx.z_max = std::max(current->ctx.z_max, p.z());
      current->ctx.z_min = std::min(current->ctx.z_min, p.z());
      ++current->ctx.points;
    }
  }

  ScanContext3D ctx;
  ctx.reserve(acc.size());
  for (auto& [key, a] : acc) {
    if (!a.has_sup) {
      a.ctx.sup = a.ctx.z_max;
    }
    if (!a.has_inf) {
      a.ctx.inf = a.ctx.z_min;
    }
    ctx.emplace(key, a.ctx);
  }
  return ctx;
}

double compute_ratio1(const ColumnContext& ctx, const std::optional<ColumnExtent>& column,
                      double eps_div) {
  if (!column) {
    return 1.0;
  }
  const double band = ctx.z_max - ctx.z_min;
  const double denom = ctx.has_max_ring ? ctx.z_max - column->min : column->max - column->min;
  if (!(denom >= eps_div)) {
    return 1.0;
  }
  return std::max(0.0, band / denom);
}

std::vector<RegionIndex> select_candidate_regions(const ScanContext3D& ctx, const RHMap& map) {
  const double cube = map.config().cube_size;
  const std::int32_t side = map.config().cubes_per_axis();
  std::vector<RegionIndex> out;
  for (const auto& [key, c] : ctx) {
    const RegionColumn o = column_of(key);
    const auto* zs = map.column_regions(o);
    if (zs == nullptr) {
      continue;
    }
    const double lo = std::min(c.inf, c.sup);
    const double hi = std::max(c.inf, c.sup);
    for (const std::int32_t z : *zs) {
      const double bottom = z * cube;
      const double top = (z + side) * cube;
      if (bottom <= hi && lo < top) {
        out.push_back({o.x, o.y, z});
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double compute_ratio2(const ScanContext3D& ctx, const RHMap& map, const RegionIndex& region,
                      double eps_div) {
  const auto it = ctx.find(region);
  if (it == ctx.end()) {
    return 0.0;
  }
  const Region* r = map.find_region(region);
  if (r == nullptr || r->occupied_count() == 0) {
    return 1.0;
  }
  const double cube = map.config().cube_size;
  const double denom = r->z_max(cube) - r->z_min(cube);
  if (!(denom >= eps_div)) {
    return 1.0;
  }
  return std::max(0.0, (it->second.z_max - it->second.z_min) / denom);
}

}  // namespace rhmap
