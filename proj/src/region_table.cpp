#include "rhmap/region_table.hpp"

#include <stdexcept>

namespace rhmap {

RegionTable::RegionTable(std::size_t bucket_count, const HashPrimes& primes)
    : primes_(primes), heads_(bucket_count, kEnd) {
  if (bucket_count == 0) {
    throw std::invalid_argument("bucket count must be positive");
  }
}

std::size_t RegionTable::bucket_of(const RegionIndex& key) const {
  return static_cast<std::size_t>(hash_index(key, primes_, heads_.size()));
}

std::size_t RegionTable::bucket_size(std::size_t bucket) const {
  std::size_t n = 0;
  for (std::int32_t i = heads_.at(bucket); i != kEnd; i = nodes_[static_cast<std::size_t>(i)].next) {
    ++n;
  }
  return n;
}

Region* RegionTable::find(const RegionIndex& key) {
  return const_cast<Region*>(static_cast<const RegionTable&>(*this).find(key));
}

const Region* RegionTable::find(const RegionIndex& key) const {
  for (std::int32_t i = heads_[bucket_of(key)]; i != kEnd;) {
    const Node& node = nodes_[static_cast<std::size_t>(i)];
    if (node.key == key) {
      return node.region.get();
    }
    i = node.next;
  }
  return nullptr;
}

std::pair<Region*, bool> RegionTable::find_or_create(const RegionIndex& key, std::int32_t side) {
  if (Region* existing = find(key)) {
    return {existing, false};
  }
  if (static_cast<double>(size_ + 1) > kMaxLoadFactor * static_cast<double>(heads_.size())) {
    rehash(heads_.size() * 2);
  }
  std::int32_t slot;
  if (!free_slots_.empty()) {
    slot = free_slots_.back();
    free_slots_.pop_back();
  } else {
    slot = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
  }
  Node& node = nodes_[static_cast<std::size_t>(slot)];
  node.key = key;
  node.region = std::make_unique<Region>(key, side);
  const std::size_t b = bucket_of(key);
  node.next = heads_[b];
  heads_[b] = slot;
  ++size_;
  return {node.region.get(), true};
}

bool RegionTable::erase(const RegionIndex& key) {
  const std::size_t b = bucket_of(key);
  std::int32_t* link = &heads_[b];
  while (*link != kEnd) {
    Node& node = nodes_[static_cast<std::size_t>(*link)];
    if (node.key == key) {
      const std::int32_t slot = *link;
      *link = node.next;
      node.region.reset();
      node.next = kEnd;
      free_slots_.push_back(slot);
      --size_;
      return true;
    }
    link = &node.next;
  }
  return false;
}

void RegionTable::rehash(std::size_t bucket_count) {
  heads_.assign(bucket_count, kEnd);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    Node& node = nodes_[i];
    if (!node.region) {
      continue;
    }
    const std::size_t b = bucket_of(node.key);
    node.next = heads_[b];
    heads_[b] = static_cast<std::int32_t>(i);
  }
}

}  // namespace rhmap
