#include <cstdio>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "rhmap/io.hpp"

namespace rhmap {
namespace {

namespace fs = std::filesystem;

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rhmap_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

void write_text(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

using Io = TempDir;

TEST_F(Io, KittiScanRoundTrip) {
  Scan s;
  s.points = {{1.5F, -2.25F, 0.125F}, {0, 0, 0}, {-80, 3, 7}};
  write_kitti_scan(dir_ / "a.bin", s);
  EXPECT_EQ(fs::file_size(dir_ / "a.bin"), 48U);
  const Scan r = read_kitti_scan(dir_ / "a.bin");
  EXPECT_EQ(r.points, s.points);
}

TEST_F(Io, KittiScanTruncated) {
  write_text(dir_ / "t.bin", std::string(20, '\0'));
  EXPECT_THROW(read_kitti_scan(dir_ / "t.bin"), FormatError);
  EXPECT_THROW(read_kitti_scan(dir_ / "missing.bin"), FormatError);
}

TEST_F(Io, PosesParseAndRepair) {
  write_text(dir_ / "p.txt",
             "1 0 0 1 0 1 0 2 0 0 1 3\n"
             "\n"
             "1.001 0 0 0 0 1 0 0 0 0 1 0\n");
  const PoseFile f = read_poses(dir_ / "p.txt");
  ASSERT_EQ(f.poses.size(), 2U);
  EXPECT_EQ(f.poses[0].translation, Eigen::Vector3d(1, 2, 3));
  EXPECT_EQ(f.reorthonormalized_lines, std::vector<std::size_t>{3});
  EXPECT_TRUE(f.poses[1].is_valid(1e-9));
}

TEST_F(Io, PosesRejectMalformed) {
  write_text(dir_ / "p.txt", "1 0 0 1 0 1 0 2 0 0 1\n");
  EXPECT_THROW(read_poses(dir_ / "p.txt"), FormatError);
  write_text(dir_ / "q.txt", "1 0 0 1 0 1 0 2 0 0 1 x\n");
  EXPECT_THROW(read_poses(dir_ / "q.txt"), FormatError);
}

TEST_F(Io, PoseRoundTrip) {
  const std::vector<Pose> poses{Pose::from_yaw(0.3, {1, 2, 3}), Pose::from_yaw(-2.0, {0, 0, 0})};
  write_poses(dir_ / "p.txt", poses);
  const PoseFile f = read_poses(dir_ / "p.txt");
  ASSERT_EQ(f.poses.size(), 2U);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_TRUE(f.poses[i].rotation.isApprox(poses[i].rotation, 1e-12));
    EXPECT_TRUE(f.poses[i].translation.isApprox(poses[i].translation, 1e-12));
  }
}

TEST_F(Io, LabelsMaskUsesLowBits) {
  const std::vector<std::uint32_t> labels{40, 252 | (7U << 16), 50, 259};
  write_labels(dir_ / "l.label", labels);
  const auto mask = read_labels(dir_ / "l.label", 4, default_moving_classes());
  EXPECT_EQ(mask, (std::vector<std::uint8_t>{0, 1, 0, 1}));
  EXPECT_THROW(read_labels(dir_ / "l.label", 5, default_moving_classes()), FormatError);
}

TEST_F(Io, PlyRoundTripAndErrors) {
  const std::vector<MapPoint> pts{{{0.05, 0.15, -0.25}, true}, {{12.5, -3.75, 1.05}, false}};
  write_ply(dir_ / "m.ply", pts);
  EXPECT_EQ(read_ply(dir_ / "m.ply"), pts);
  write_text(dir_ / "bad.ply", "ply\nformat binary_little_endian 1.0\nend_header\n");
  EXPECT_THROW(read_ply(dir_ / "bad.ply"), FormatError);
  write_text(dir_ / "short.ply",
             "ply\nformat ascii 1.0\nelement vertex 2\nproperty float x\nproperty float y\n"
             "property float z\nproperty uchar is_ground\nend_header\n0 0 0 1\n");
  EXPECT_THROW(read_ply(dir_ / "short.ply"), FormatError);
}

TEST_F(Io, ListFilesSorted) {
  write_text(dir_ / "000002.bin", "");
  write_text(dir_ / "000001.bin", "");
  write_text(dir_ / "notes.txt", "");
  const auto files = list_files(dir_, ".bin");
  ASSERT_EQ(files.size(), 2U);
  EXPECT_EQ(files[0].filename(), "000001.bin");
}

}  // namespace
}  // namespace rhmap
