// Batch front end for the region-wise map: run, eval, synth, bench.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <unordered_set>

#include <CLI11.hpp>
#include <json.hpp>

#include "rhmap/config.hpp"
#include "rhmap/evaluation.hpp"
#include "rhmap/io.hpp"
#include "rhmap/pipeline.hpp"
#include "rhmap/scenes.hpp"

namespace {

using nlohmann::json;

constexpr int kUsage = 1;
constexpr int kDataError = 2;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json eval_to_json(const rhmap::EvalResult& e) {
  return {{"PR", optional_number(e.pr)}, {"RR", optional_number(e.rr)},
          {"F1", optional_number(e.f1)}, {"N_sta", e.n_sta},
          {"N_dyn", e.n_dyn},            {"N_TN", e.n_tn},
          {"N_TP", e.n_tp},              {"mean_ms", e.mean_ms},
          {"hz", e.hz}};
}

json run_to_json(const rhmap::RunResult& run) {
  json frames = json::array();
  for (const rhmap::FrameReport& r : run.reports) {
    frames.push_back({{"frame", r.frame},
                      {"points", r.points},
                      {"elapsed_ms", r.elapsed_ms},
                      {"keyframe", r.keyframe},
                      {"info_content", r.info_content},
                      {"ground_cubes_added", r.ground.ground_cubes_added},
                      {"front_cubes_removed", r.front.cubes_removed},
                      {"back_cubes_removed", r.back.cubes_removed},
                      {"ground_cubes_lost", r.ground_cubes_lost},
                      {"occupied_cubes", r.occupied_cubes}});
  }
  json out = run.eval ? eval_to_json(*run.eval) : json::object();
  if (!run.eval && !run.reports.empty()) {
    std::vector<double> ms;
    for (const auto& r : run.reports) ms.push_back(r.elapsed_ms);
    const auto t = rhmap::timing_report(ms);
    out["mean_ms"] = t.mean_ms;
    out["hz"] = t.hz;
  }
  out["frames"] = std::move(frames);
  out["occupied_cubes"] = run.map.occupied_cube_count();
  out["ground_cubes"] = run.map.ground_cube_count();
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) throw rhmap::FormatError("write failed for " + path.string());
}

/// Command-line flags layered over the config file.
struct Overrides {
  std::string config_file;
  std::vector<std::string> sets;
  std::string scans, poses, labels, synthetic, out, report;

  rhmap::PipelineConfig resolve() const {
    rhmap::PipelineConfig cfg;
    if (!config_file.empty()) cfg = rhmap::load_config(config_file);
    for (const std::string& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
      }
      rhmap::set_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!scans.empty()) cfg.scans_dir = scans;
    if (!poses.empty()) cfg.poses_file = poses;
    if (!labels.empty()) cfg.labels_dir = labels;
    if (!synthetic.empty()) cfg.synthetic_spec = synthetic;
    if (!out.empty()) cfg.out_ply = out;
    if (!report.empty()) cfg.report_json = report;
    cfg.validate();
    return cfg;
  }
};

int cmd_run(const Overrides& o) {
  const rhmap::PipelineConfig cfg = o.resolve();
  const auto source = rhmap::make_source(cfg);
  const rhmap::RunResult run = rhmap::run_pipeline(cfg, *source);
  if (!cfg.out_ply.empty()) rhmap::write_map_ply(run.map, cfg.out_ply);
  const json report = run_to_json(run);
  if (!cfg.report_json.empty()) write_text(cfg.report_json, report.dump(2) + "\n");
  json summary = report;
  summary.erase("frames");
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int cmd_eval(const std::string& map_path, const std::string& truth_dir,
             const std::string& config_file) {
  rhmap::PipelineConfig cfg;
  if (!config_file.empty()) cfg = rhmap::load_config(config_file);
  const std::filesystem::path dir(truth_dir);
  const rhmap::KittiSource truth_source(dir / "velodyne", dir / "poses.txt", dir / "labels");
  rhmap::GroundTruthTally tally(cfg.map);
  for (std::size_t i = 0; i < truth_source.size(); ++i) {
    const rhmap::LabeledFrame f = truth_source.load(i);
    for (std::size_t k = 0; k < f.scan.size(); ++k) {
      tally.add(f.pose.apply(f.scan.points[k].cast<double>()), f.dynamic[k] != 0);
    }
  }
  std::unordered_set<rhmap::GlobalIndex, rhmap::Index3Hash> occupied;
  for (const rhmap::MapPoint& p : rhmap::read_ply(map_path)) {
    occupied.insert(rhmap::point_to_indices(p.position, cfg.map).global);
  }
  const rhmap::EvalResult e =
      tally.evaluate_with([&](const rhmap::GlobalIndex& i) { return occupied.contains(i); });
  std::cout << eval_to_json(e).dump(2) << "\n";
  return 0;
}

int cmd_synth(const std::string& spec, const std::string& out, std::uint64_t seed) {
  const auto names = rhmap::builtin_scene_names();
  const bool builtin = std::find(names.begin(), names.end(), spec) != names.end();
  const rhmap::SceneSpec scene =
      builtin ? rhmap::builtin_scene(spec) : rhmap::load_scene_spec(spec);
  rhmap::write_synthetic_dataset(scene, seed, out);
  write_text(std::filesystem::path(out) / "scene.json", rhmap::scene_spec_to_json(scene) + "\n");
  std::cout << "wrote " << scene.frames << " frames to " << out << "\n";
  return 0;
}

int cmd_bench(const Overrides& o) {
  rhmap::PipelineConfig cfg = o.resolve();
  if (cfg.synthetic_spec.empty() && cfg.scans_dir.empty()) cfg.synthetic_spec = "throughput";
  const auto source = rhmap::make_source(cfg);
  const rhmap::RunResult run = rhmap::run_pipeline(cfg, *source);
  std::vector<double> ms;
  std::size_t points = 0;
  for (const auto& r : run.reports) {
    ms.push_back(r.elapsed_ms);
    points += r.points;
  }
  if (ms.empty()) throw std::invalid_argument("benchmark source has no frames");
  const auto t = rhmap::timing_report(ms);
  std::printf("frames %zu  mean points %.0f  mean %.2f ms  %.1f Hz\n", ms.size(),
              static_cast<double>(points) / static_cast<double>(ms.size()), t.mean_ms, t.hz);
  return 0;
}

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_file, "key = value config file");
  cmd->add_option("--set", o.sets, "override one config key (key=value)");
  cmd->add_option("--scans", o.scans, "directory of .bin scans");
  cmd->add_option("--poses", o.poses, "pose file, one 3x4 row-major matrix per line");
  cmd->add_option("--labels", o.labels, "directory of .label files");
  cmd->add_option("--synthetic", o.synthetic, "scene JSON file or built-in scene name");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Region-wise hash map with online dynamic object removal"};
  app.require_subcommand(1);

  Overrides run_opts;
  auto* run = app.add_subcommand("run", "build a static map from a scan sequence");
  add_common(run, run_opts);
  run->add_option("--out", run_opts.out, "map export (.ply)");
  run->add_option("--report", run_opts.report, "report (.json)");

  std::string map_path, truth_dir, eval_config;
  auto* eval = app.add_subcommand("eval", "score a map export against labelled scans");
  eval->add_option("--map", map_path, "map export (.ply)")->required();
  eval->add_option("--truth", truth_dir, "directory with velodyne/, labels/ and poses.txt")
      ->required();
  eval->add_option("--config", eval_config, "config file (for cube_size)");

  std::string spec, out_dir;
  std::uint64_t seed = 0;
  auto* synth = app.add_subcommand("synth", "render a synthetic labelled sequence");
  synth->add_option("--spec", spec, "scene JSON file or built-in scene name")->required();
  synth->add_option("--out", out_dir, "output directory")->required();
  synth->add_option("--seed", seed, "noise seed");

  Overrides bench_opts;
  auto* bench = app.add_subcommand("bench", "report mean frame time and rate");
  add_common(bench, bench_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*run) return cmd_run(run_opts);
    if (*eval) return cmd_eval(map_path, truth_dir, eval_config);
    if (*synth) return cmd_synth(spec, out_dir, seed);
    if (*bench) return cmd_bench(bench_opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsage;
}
