#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "atasim/geometry.hpp"

namespace atasim {

// Per-line tag metadata. Sector state lives in two masks: `sector_valid` for data that
// is present and `sector_reserved` for sectors allocated on a miss whose fill has not
// arrived yet. A way with neither bit set anywhere is free.
struct TagEntry {
  std::uint64_t tag = 0;
  std::uint64_t sector_valid = 0;
  std::uint64_t sector_reserved = 0;
  bool dirty = false;
  std::uint64_t lru_stamp = 0;

  bool in_use() const { return (sector_valid | sector_reserved) != 0; }
  bool sector_is_valid(std::uint32_t s) const { return (sector_valid >> s) & 1u; }
  bool sector_is_reserved(std::uint32_t s) const { return (sector_reserved >> s) & 1u; }
};

struct Eviction {
  std::uint64_t line_address = 0;
  std::uint64_t set_index = 0;
  std::uint32_t way = 0;
  std::uint64_t tag = 0;
  std::uint64_t sector_valid = 0;
  bool dirty = false;
};

enum class SectorFill : std::uint8_t { Valid, Reserved };

struct InstallResult {
  std::uint32_t way = 0;
  bool allocated = false;  // a new entry was created (as opposed to updating a resident line)
  std::optional<Eviction> evicted;
};

// One cache's decoupled tag array. Each set sits on its own bank, so lookups that target
// different sets never conflict; the aggregated lookup below relies on that.
class TagArray {
 public:
  TagArray(std::uint32_t owner_cache_id, const CacheGeometry& geometry);

  std::uint32_t owner() const { return owner_; }
  const CacheGeometry& geometry() const { return geometry_; }
  std::uint64_t sets() const { return sets_; }
  std::uint32_t ways() const { return geometry_.ways; }

  std::optional<std::uint32_t> find_way(std::uint64_t set_index, std::uint64_t tag) const;
  const TagEntry* find(const AddressParts& parts) const;
  TagEntry* find(const AddressParts& parts);

  const TagEntry& entry(std::uint64_t set_index, std::uint32_t way) const;
  TagEntry& entry(std::uint64_t set_index, std::uint32_t way);

  // Lowest free way if any, else the way with the smallest lru_stamp (lowest index on ties).
  std::uint32_t lru_victim(std::uint64_t set_index) const;

  // Resident tag: mark `sector` and refresh LRU. Otherwise replace the LRU victim with a
  // fresh entry holding only `sector`. A replaced in-use entry is returned.
  InstallResult install_line(const AddressParts& parts, std::uint32_t sector,
                             SectorFill fill = SectorFill::Valid);

  // Refresh LRU of a resident line. Throws std::logic_error when the line is absent.
  void touch(const AddressParts& parts);

  // Turns a reserved (or missing) sector of a resident line valid. False if line absent.
  bool complete_fill(const AddressParts& parts, std::uint32_t sector, bool make_dirty);

  std::uint64_t clock() const { return clock_; }

  // One line per in-use entry:
  // cache=<i> set=<s> way=<w> tag=<hex> sectors=<bitstring> dirty=<0|1> lru=<n>
  void dump(std::ostream& out) const;

 private:
  std::uint64_t tick() { return ++clock_; }

  std::uint32_t owner_;
  CacheGeometry geometry_;
  std::uint64_t sets_;
  std::uint64_t clock_ = 0;
  std::vector<TagEntry> entries_;  // sets_ x ways, row-major
};

// Which caches of a cluster hold the probed line. bits[i] is set when tag array i has an
// in-use entry for (set_index, tag); hit_sector[i] additionally requires the requested
// sector to be valid there.
struct PresenceVector {
  std::uint32_t width = 0;
  std::uint64_t bits = 0;
  std::uint64_t hit_sector = 0;

  bool bit(std::uint32_t i) const { return (bits >> i) & 1u; }
  bool sector_hit(std::uint32_t i) const { return (hit_sector >> i) & 1u; }
  std::string to_string() const;  // e.g. "[1,0]"

  bool operator==(const PresenceVector&) const = default;
};

struct LookupRequest {
  std::uint32_t requester = 0;  // index of the requesting core within the cluster
  AddressParts parts;
};

// Compares every request against every tag array of the cluster in the same cycle.
// Results depend only on the arrays' state, not on request order or set overlap.
std::vector<PresenceVector> aggregated_lookup(std::span<const LookupRequest> requests,
                                              std::span<const TagArray* const> arrays);

PresenceVector lookup_one(const AddressParts& parts, std::span<const TagArray* const> arrays);

}  // namespace atasim
