#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>

#include "atasim/geometry.hpp"
#include "atasim/request.hpp"
#include "atasim/tag_array.hpp"

namespace atasim {

inline std::uint32_t partition_of(std::uint64_t line_address, std::uint32_t partitions) {
  return static_cast<std::uint32_t>(line_address % partitions);
}

struct L2Result {
  Cycle start = 0;
  Cycle ready = 0;
  bool hit = false;
  Token value = 0;
};

// One memory sub-partition of the L2: a sector LRU cache in front of a fixed-latency
// memory. Lines are allocated at access time; a sector whose memory fetch is still in
// flight answers later requests no earlier than that fetch (per-partition miss merging).
// Non-inclusive; dirty victims fall through to memory.
class L2Partition {
 public:
  L2Partition(std::uint32_t partition_id, std::uint32_t partitions, const CacheGeometry& geometry,
              std::uint32_t t_l2, std::uint32_t t_mem);

  std::uint32_t id() const { return id_; }
  Cycle busy_until() const { return busy_until_; }

  // One access admitted per cycle; returns the start cycle.
  Cycle admit(Cycle arrival);

  // Timed read of one sector (admits it first).
  L2Result access(std::uint64_t line_address, std::uint32_t sector, Cycle arrival);

  // Dirty data from an L1. Updates a resident line in place, otherwise goes to memory.
  // Consumes one admission slot; returns the start cycle.
  Cycle writeback(std::uint64_t line_address, std::span<const Token> sectors,
                  std::uint64_t sector_mask, Cycle arrival);

  // Functional view (no timing, no state change).
  Token peek(std::uint64_t line_address, std::uint32_t sector) const;

  std::uint64_t accesses() const { return accesses_; }
  std::uint64_t hits() const { return hits_; }
  std::uint64_t misses() const { return accesses_ - hits_; }
  std::uint64_t writebacks() const { return writebacks_; }

  const TagArray& tags() const { return tags_; }

 private:
  AddressParts local_parts(std::uint64_t line_address, std::uint32_t sector) const;
  static std::uint64_t key(std::uint64_t line_address, std::uint32_t sector) {
    return (line_address << 6) | sector;
  }
  void evict(const Eviction& ev);

  std::uint32_t id_;
  std::uint32_t partitions_;
  CacheGeometry geometry_;
  std::uint32_t t_l2_;
  std::uint32_t t_mem_;
  TagArray tags_;
  Cycle busy_until_ = 0;
  std::unordered_map<std::uint64_t, Token> values_;   // resident sectors
  std::unordered_map<std::uint64_t, Cycle> ready_;    // sectors with a fetch in flight
  std::unordered_map<std::uint64_t, Token> memory_;
  std::uint64_t accesses_ = 0;
  std::uint64_t hits_ = 0;
  std::uint64_t writebacks_ = 0;
};

}  // namespace atasim
