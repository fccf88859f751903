#include <gtest/gtest.h>

#include "rhmap/config.hpp"

namespace rhmap {
namespace {

TEST(Config, DefaultsMatchTheDocumentedValues) {
  const PipelineConfig c;
  EXPECT_DOUBLE_EQ(c.map.cube_size, 0.1);
  EXPECT_EQ(c.map.mask_bits, 3);
  EXPECT_DOUBLE_EQ(c.fresher.delta1, 0.2);
  EXPECT_DOUBLE_EQ(c.fresher.delta2, 0.2);
  EXPECT_EQ(c.fresher.sup_inf.max_search, 10);
  EXPECT_DOUBLE_EQ(c.backend.dist_away, 20.0);
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, ParsesKeysCommentsAndBlankLines) {
  const PipelineConfig c = parse_config(
      "# tuning\n"
      "mask_bits = 4\n"
      "\n"
      "delta1 = 0.3  # trailing\n"
      "jump_convention = neighbor_minus_current\n"
      "backend_enabled = false\n");
  EXPECT_EQ(c.map.mask_bits, 4);
  EXPECT_DOUBLE_EQ(c.fresher.delta1, 0.3);
  EXPECT_EQ(c.fresher.sup_inf.convention, JumpConvention::kNeighborMinusCurrent);
  EXPECT_FALSE(c.backend_enabled);
}

TEST(Config, ErrorsNameTheKey) {
  try {
    parse_config("bogus = 1\n");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("bogus"), std::string::npos);
  }
  EXPECT_THROW(parse_config("delta1 = abc\n"), std::invalid_argument);
  EXPECT_THROW(parse_config("mask_bits = 2.5\n"), std::invalid_argument);
  PipelineConfig c;
  c.fresher.delta1 = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Config, FormatRoundTrips) {
  PipelineConfig c;
  c.map.cube_size = 0.15;
  c.fresher.min_support = 7;
  c.fresher.ground.max_slope_deg = 30.0;
  c.backend.max_per_step = 3;
  c.seed = 42;
  c.scans_dir = "seq/velodyne";
  c.poses_file = "seq/poses.txt";
  c.labels_dir = "seq/labels";
  c.synthetic_spec = "urban";
  c.out_ply = "out/map.ply";
  c.report_json = "out/report.json";
  const PipelineConfig r = parse_config(format_config(c));
  EXPECT_EQ(format_config(r), format_config(c));
  EXPECT_EQ(r.fresher.min_support, 7U);
  EXPECT_EQ(r.out_ply, c.out_ply);
  for (const std::string& key : config_keys()) {
    EXPECT_NE(format_config(c).find(key + " ="), std::string::npos) << key;
  }
}

}  // namespace
}  // namespace rhmap
