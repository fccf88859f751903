#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "rhmap/index.hpp"
#include "rhmap/region.hpp"

namespace rhmap {

/// Separate-chaining hash table from RegionIndex to Region.
///
/// Buckets are chosen with hash_index(), so with N buckets a key lands in
/// ((x*n_x) xor (y*n_y) xor (z*n_z)) mod N. Colliding keys share a chain and
/// are told apart by full key comparison. The table doubles N once the load
/// factor exceeds 0.75. Region addresses stay stable until the region is erased.
class RegionTable {
 public:
  static constexpr double kMaxLoadFactor = 0.75;

  RegionTable(std::size_t bucket_count, const HashPrimes& primes);

  Region* find(const RegionIndex& key);
  const Region* find(const RegionIndex& key) const;

  /// Returns the region for `key`, creating an empty one of the given side
  /// length when absent. The bool is true when a region was created.
  std::pair<Region*, bool> find_or_create(const RegionIndex& key, std::int32_t side);

  bool erase(const RegionIndex& key);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  std::size_t bucket_count() const { return heads_.size(); }
  std::size_t bucket_of(const RegionIndex& key) const;
  /// Number of keys chained in one bucket.
  std::size_t bucket_size(std::size_t bucket) const;

  /// Visits live regions in slot order, which depends only on the sequence of
  /// inserts and erases.
  template <class F>
  void for_each(F&& f) const {
    for (const Node& node : nodes_) {
      if (node.region) {
        f(node.key, static_cast<const Region&>(*node.region));
      }
    }
  }

  template <class F>
  void for_each_mut(F&& f) {
    for (Node& node : nodes_) {
      if (node.region) {
        f(node.key, *node.region);
      }
    }
  }

 private:
  static constexpr std::int32_t kEnd = -1;

  struct Node {
    RegionIndex key;
    std::unique_ptr<Region> region;
    std::int32_t next = kEnd;
  };

  void rehash(std::size_t bucket_count);

  HashPrimes primes_;
  std::vector<std::int32_t> heads_;
  std::vector<Node> nodes_;
  std::vector<std::int32_t> free_slots_;
  std::size_t size_ = 0;
};

}  // namespace rhmap
