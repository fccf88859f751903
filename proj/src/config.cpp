#include "rhmap/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "rhmap/io.hpp"

namespace rhmap {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* want) {
  throw std::invalid_argument("config key '" + key + "': expected " + want + ", got '" + value +
                              "'");
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, v, "a number");
  return out;
}

template <class Int>
Int to_int(const std::string& key, const std::string& v) {
  Int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, v, "an integer");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "on") return true;
  if (v == "false" || v == "0" || v == "off") return false;
  bad_value(key, v, "true or false");
}

JumpConvention to_convention(const std::string& key, const std::string& v) {
  if (v == "absolute") return JumpConvention::kAbsolute;
  if (v == "current_minus_neighbor") return JumpConvention::kCurrentMinusNeighbor;
  if (v == "neighbor_minus_current") return JumpConvention::kNeighborMinusCurrent;
  bad_value(key, v, "absolute, current_minus_neighbor or neighbor_minus_current");
}

const char* convention_name(JumpConvention c) {
  switch (c) {
    case JumpConvention::kAbsolute: return "absolute";
    case JumpConvention::kCurrentMinusNeighbor: return "current_minus_neighbor";
    case JumpConvention::kNeighborMinusCurrent: return "neighbor_minus_current";
  }
  return "absolute";
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Field {
  const char* key;
  std::function<void(PipelineConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const PipelineConfig&)> get;
};

#define RHMAP_DOUBLE(name, member)                                                             \
  Field {                                                                                      \
    name, [](PipelineConfig& c, const std::string& k, const std::string& v) {                  \
      c.member = to_double(k, v);                                                              \
    },                                                                                         \
        [](const PipelineConfig& c) { return num(c.member); }                                  \
  }
#define RHMAP_INT(name, member, type)                                                          \
  Field {                                                                                      \
    name, [](PipelineConfig& c, const std::string& k, const std::string& v) {                  \
      c.member = to_int<type>(k, v);                                                           \
    },                                                                                         \
        [](const PipelineConfig& c) { return std::to_string(c.member); }                       \
  }
#define RHMAP_BOOL(name, member)                                                               \
  Field {                                                                                      \
    name, [](PipelineConfig& c, const std::string& k, const std::string& v) {                  \
      c.member = to_bool(k, v);                                                                \
    },                                                                                         \
        [](const PipelineConfig& c) { return std::string(c.member ? "true" : "false"); }       \
  }
#define RHMAP_PATH(name, member)                                                               \
  Field {                                                                                      \
    name, [](PipelineConfig& c, const std::string&, const std::string& v) { c.member = v; },   \
        [](const PipelineConfig& c) { return c.member.string(); }                              \
  }

const std::vector<Field>& fields() {
  static const std::vector<Field> table{
      RHMAP_DOUBLE("cube_size", map.cube_size),
      RHMAP_INT("mask_bits", map.mask_bits, int),
      RHMAP_INT("table_size", map.table_size, std::size_t),
      RHMAP_DOUBLE("log_odds_hit", map.log_odds_hit),
      RHMAP_DOUBLE("clamp_lo", map.clamp_lo),
      RHMAP_DOUBLE("clamp_hi", map.clamp_hi),
      RHMAP_DOUBLE("occupied_threshold", map.occupied_threshold),
      RHMAP_DOUBLE("delta1", fresher.delta1),
      RHMAP_DOUBLE("delta2", fresher.delta2),
      RHMAP_DOUBLE("r_sup", fresher.sup_inf.r_sup),
      RHMAP_DOUBLE("r_inf", fresher.sup_inf.r_inf),
      RHMAP_INT("max_search", fresher.sup_inf.max_search, int),
      RHMAP_INT("min_support", fresher.min_support, std::uint32_t),
      Field{"jump_convention",
            [](PipelineConfig& c, const std::string& k, const std::string& v) {
              c.fresher.sup_inf.convention = to_convention(k, v);
            },
            [](const PipelineConfig& c) {
              return std::string(convention_name(c.fresher.sup_inf.convention));
            }},
      RHMAP_BOOL("ordered_bounds", fresher.sup_inf.ordered_bounds),
      RHMAP_DOUBLE("r_gro", fresher.ground.r_gro),
      RHMAP_DOUBLE("bootstrap_margin", fresher.ground.bootstrap_margin),
      RHMAP_DOUBLE("max_ground_slope_deg", fresher.ground.max_slope_deg),
      RHMAP_INT("image_rows", fresher.range_image.rows, int),
      RHMAP_INT("image_cols", fresher.range_image.cols, int),
      RHMAP_DOUBLE("fov_down_deg", fresher.range_image.fov_down_deg),
      RHMAP_DOUBLE("fov_up_deg", fresher.range_image.fov_up_deg),
      RHMAP_DOUBLE("dist_keyframe", backend.dist_keyframe),
      RHMAP_DOUBLE("time_keyframe", backend.time_keyframe),
      RHMAP_DOUBLE("info_delta", backend.info_delta),
      RHMAP_DOUBLE("dist_away", backend.dist_away),
      RHMAP_INT("queue_capacity", backend.queue_capacity, std::size_t),
      RHMAP_INT("max_per_step", backend.max_per_step, std::size_t),
      RHMAP_BOOL("backend_enabled", backend_enabled),
      RHMAP_DOUBLE("r_max", r_max),
      RHMAP_INT("seed", seed, std::uint64_t),
      RHMAP_PATH("scans", scans_dir),
      RHMAP_PATH("poses", poses_file),
      RHMAP_PATH("labels", labels_dir),
      RHMAP_PATH("synthetic", synthetic_spec),
      RHMAP_PATH("out", out_ply),
      RHMAP_PATH("report", report_json),
  };
  return table;
}

#undef RHMAP_DOUBLE
#undef RHMAP_INT
#undef RHMAP_BOOL
#undef RHMAP_PATH

void require_positive(double v, const char* key) {
  if (!(v > 0.0)) {
    throw std::invalid_argument(std::string("config key '") + key + "' must be positive");
  }
}

}  // namespace

void PipelineConfig::validate() const {
  map.validate();
  require_positive(fresher.delta1, "delta1");
  require_positive(fresher.delta2, "delta2");
  require_positive(fresher.sup_inf.r_sup, "r_sup");
  require_positive(fresher.sup_inf.r_inf, "r_inf");
  require_positive(fresher.sup_inf.max_search, "max_search");
  require_positive(fresher.ground.r_gro, "r_gro");
  require_positive(fresher.ground.bootstrap_margin, "bootstrap_margin");
  require_positive(r_max, "r_max");
  fresher.validate();
  backend.validate();
}

void set_config_value(PipelineConfig& cfg, const std::string& key, const std::string& value) {
  for (const Field& f : fields()) {
    if (key == f.key) {
      f.set(cfg, key, value);
      return;
    }
  }
  throw std::invalid_argument("unknown config key '" + key + "'");
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const Field& f : fields()) {
    keys.emplace_back(f.key);
  }
  return keys;
}

PipelineConfig parse_config(const std::string& text, PipelineConfig base) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    }
    try {
      set_config_value(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  base.validate();
  return base;
}

PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), std::move(base));
}

std::string format_config(const PipelineConfig& cfg) {
  std::string out;
  for (const Field& f : fields()) {
    const std::string v = f.get(cfg);
    if (!v.empty()) {
      out += std::string(f.key) + " = " + v + "\n";
    }
  }
  return out;
}

}  // namespace rhmap
