#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "rhmap/io.hpp"
#include "rhmap/pipeline.hpp"
#include "rhmap/scenes.hpp"

namespace rhmap {
namespace {

namespace fs = std::filesystem;

SceneSpec small_scene() {
  SceneSpec s = residue_scene();
  s.frames = 12;
  s.beams.azimuth_steps = 360;
  return s;
}

TEST(Pipeline, RunsAndReports) {
  const SyntheticSource src(small_scene(), 1);
  const RunResult r = run_pipeline(PipelineConfig{}, src);
  ASSERT_EQ(r.reports.size(), 12U);
  ASSERT_TRUE(r.eval.has_value());
  EXPECT_GT(r.map.occupied_cube_count(), 0U);
  EXPECT_TRUE(r.reports.front().keyframe);
  for (const FrameReport& f : r.reports) EXPECT_EQ(f.ground_cubes_lost, 0U);
}

TEST(Pipeline, Deterministic) {
  const SyntheticSource src(small_scene(), 5);
  const RunResult a = run_pipeline(PipelineConfig{}, src);
  const RunResult b = run_pipeline(PipelineConfig{}, src);
  EXPECT_EQ(a.map.export_occupied_points(), b.map.export_occupied_points());
  EXPECT_EQ(a.eval->n_tn, b.eval->n_tn);
  EXPECT_EQ(a.eval->n_tp, b.eval->n_tp);
}

TEST(Pipeline, KittiDirectoryMatchesSyntheticSource) {
  const fs::path dir = fs::temp_directory_path() / "rhmap_pipeline_kitti";
  fs::remove_all(dir);
  const SceneSpec s = small_scene();
  write_synthetic_dataset(s, 2, dir);
  const KittiSource kitti(dir / "velodyne", dir / "poses.txt", dir / "labels");
  ASSERT_EQ(kitti.size(), 12U);
  EXPECT_TRUE(kitti.labeled());
  const RunResult a = run_pipeline(PipelineConfig{}, kitti);
  const RunResult b = run_pipeline(PipelineConfig{}, SyntheticSource(s, 2));
  EXPECT_EQ(a.eval->n_sta, b.eval->n_sta);
  EXPECT_EQ(a.eval->n_dyn, b.eval->n_dyn);
  EXPECT_GT(a.map.occupied_cube_count(), 0U);
  fs::remove_all(dir);
}

TEST(Pipeline, MissingPoseLineIsAFrameError) {
  const fs::path dir = fs::temp_directory_path() / "rhmap_pipeline_short";
  fs::remove_all(dir);
  write_synthetic_dataset(small_scene(), 2, dir);
  std::ofstream(dir / "poses.txt") << "1 0 0 0 0 1 0 0 0 0 1 0\n";
  EXPECT_THROW(KittiSource(dir / "velodyne", dir / "poses.txt"), std::exception);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace rhmap
