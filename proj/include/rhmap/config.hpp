#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rhmap/backend.hpp"
#include "rhmap/map_config.hpp"
#include "rhmap/scan_to_map_removal.hpp"

namespace rhmap {

/// Everything a run needs: map, front-end and back-end tunables plus inputs
/// and outputs. Paths left empty are unused.
struct PipelineConfig {
  MapConfig map;
  ScanFresherConfig fresher;
  BackendConfig backend;
  bool backend_enabled = true;
  /// Range normaliser for the information content, in meters.
  double r_max = 80.0;
  std::uint64_t seed = 0;

  std::filesystem::path scans_dir;
  std::filesystem::path poses_file;
  std::filesystem::path labels_dir;
  std::filesystem::path synthetic_spec;
  std::filesystem::path out_ply;
  std::filesystem::path report_json;

  /// Throws std::invalid_argument naming the offending key.
  void validate() const;
};

/// Sets one key from its textual value. Throws std::invalid_argument for an
/// unknown key or an unparsable value, naming the key.
void set_config_value(PipelineConfig& cfg, const std::string& key, const std::string& value);

/// Every key accepted by set_config_value, in file order.
std::vector<std::string> config_keys();

/// Applies `key = value` lines on top of `base`. Blank lines and text after
/// '#' are ignored. Errors carry the line number and key.
PipelineConfig parse_config(const std::string& text, PipelineConfig base = {});
PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base = {});

/// Round-trippable text form of every key.
std::string format_config(const PipelineConfig& cfg);

}  // namespace rhmap
