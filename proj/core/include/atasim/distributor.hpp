#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "atasim/data_array.hpp"
#include "atasim/tag_array.hpp"

namespace atasim {

struct RoutingDecision {
  enum class Kind : std::uint8_t { LocalHit, RemoteHit, MissToL2 };
  Kind kind = Kind::MissToL2;
  std::uint32_t target = 0;  // cluster-local index of the cache to read (RemoteHit only)

  static RoutingDecision local_hit() { return {Kind::LocalHit, 0}; }
  static RoutingDecision remote_hit(std::uint32_t t) { return {Kind::RemoteHit, t}; }
  static RoutingDecision miss() { return {Kind::MissToL2, 0}; }

  std::string to_string() const;
  bool operator==(const RoutingDecision&) const = default;
};

// Request distributor of the local cache. The local copy always wins; among remote
// copies the one whose data array has the fewest queued accesses wins, lowest index on
// ties. `queued` is indexed by cluster-local cache index (may be empty when no remote
// bit can be set).
RoutingDecision distribute(const PresenceVector& presence, std::uint32_t local_index,
                           std::span<const std::uint64_t> queued);

struct RemoteCheck {
  bool available = false;  // false: line gone, sector invalid or dirty -> go to L2
  Token value = 0;
};

// Re-check of a remote line when the forwarded request reaches its data array. A hit
// refreshes the remote LRU.
RemoteCheck verify_remote(TagArray& tags, const DataArray& data, const AddressParts& parts);

struct RemoteAccess {
  enum class Outcome : std::uint8_t { Data, RedirectToL2 };
  Outcome outcome = Outcome::RedirectToL2;
  Token value = 0;
  Cycle data_ready = 0;  // bank start + t_data, Data only
};

RemoteAccess access_remote(const MemRequest& request, TagArray& tags, DataArray& data,
                           const AddressParts& parts, Cycle now, std::uint32_t t_data);

}  // namespace atasim
