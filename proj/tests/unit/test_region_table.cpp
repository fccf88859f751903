#include <map>
#include <random>

#include <gtest/gtest.h>

#include "rhmap/region_table.hpp"

namespace rhmap {
namespace {

TEST(RegionTable, CollidingKeysStayDistinct) {
  // One bucket forces every key into the same chain.
  RegionTable table(1, HashPrimes{});
  const RegionIndex a{0, 0, 0};
  const RegionIndex b{8, 0, 0};
  auto [ra, created_a] = table.find_or_create(a, 8);
  auto [rb, created_b] = table.find_or_create(b, 8);
  EXPECT_TRUE(created_a);
  EXPECT_TRUE(created_b);
  EXPECT_NE(ra, rb);
  EXPECT_EQ(table.find(a), ra);
  EXPECT_EQ(table.find(b), rb);
  EXPECT_FALSE(table.find_or_create(a, 8).second);
}

TEST(RegionTable, GrowsPastLoadFactor) {
  RegionTable table(4, HashPrimes{});
  for (int i = 0; i < 100; ++i) {
    table.find_or_create({8 * i, 0, 0}, 8);
  }
  EXPECT_EQ(table.size(), 100U);
  EXPECT_LE(static_cast<double>(table.size()) / static_cast<double>(table.bucket_count()),
            RegionTable::kMaxLoadFactor);
  for (int i = 0; i < 100; ++i) {
    ASSERT_NE(table.find({8 * i, 0, 0}), nullptr);
  }
}

TEST(RegionTable, BucketFollowsSpatialHash) {
  RegionTable table(64, HashPrimes{});
  const RegionIndex key{16, -24, 8};
  EXPECT_EQ(table.bucket_of(key), hash_index(key, HashPrimes{}, 64));
}

TEST(RegionTable, RandomOperationsAgreeWithOrderedMap) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coord(-6, 6);
  std::uniform_int_distribution<int> op(0, 2);
  RegionTable table(2, HashPrimes{});
  std::map<RegionIndex, const Region*> oracle;
  for (int n = 0; n < 5000; ++n) {
    const RegionIndex key{8 * coord(rng), 8 * coord(rng), 8 * coord(rng)};
    switch (op(rng)) {
      case 0: {
        auto [region, created] = table.find_or_create(key, 8);
        EXPECT_EQ(created, !oracle.contains(key));
        if (created) oracle[key] = region;
        EXPECT_EQ(oracle[key], region);
        break;
      }
      case 1:
        EXPECT_EQ(table.erase(key), oracle.erase(key) == 1);
        break;
      default: {
        const auto it = oracle.find(key);
        EXPECT_EQ(table.find(key), it == oracle.end() ? nullptr : it->second);
      }
    }
    ASSERT_EQ(table.size(), oracle.size());
  }
  std::size_t visited = 0;
  table.for_each([&](const RegionIndex& key, const Region& region) {
    ++visited;
    EXPECT_EQ(oracle.at(key), &region);
  });
  EXPECT_EQ(visited, oracle.size());
}

}  // namespace
}  // namespace rhmap
