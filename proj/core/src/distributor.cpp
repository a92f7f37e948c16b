#include "atasim/distributor.hpp"

namespace atasim {

std::string RoutingDecision::to_string() const {
  switch (kind) {
    case Kind::LocalHit: return "LocalHit";
    case Kind::RemoteHit: return "RemoteHit(" + std::to_string(target) + ")";
    case Kind::MissToL2: return "MissToL2";
  }
  return "?";
}

RoutingDecision distribute(const PresenceVector& presence, std::uint32_t local_index,
                           std::span<const std::uint64_t> queued) {
  if (presence.sector_hit(local_index)) return RoutingDecision::local_hit();
  bool found = false;
  std::uint32_t best = 0;
  std::uint64_t best_queue = 0;
  for (std::uint32_t i = 0; i < presence.width; ++i) {
    if (i == local_index || !presence.sector_hit(i)) continue;
    const std::uint64_t q = i < queued.size() ? queued[i] : 0;
    if (!found || q < best_queue) {
      found = true;
      best = i;
      best_queue = q;
    }
  }
  return found ? RoutingDecision::remote_hit(best) : RoutingDecision::miss();
}

RemoteCheck verify_remote(TagArray& tags, const DataArray& data, const AddressParts& parts) {
  TagEntry* e = tags.find(parts);
  if (e == nullptr || !e->sector_is_valid(parts.sector_index) || e->dirty) return {};
  tags.touch(parts);
  return {true, data.read(parts.line_address, parts.sector_index)};
}

RemoteAccess access_remote(const MemRequest& request, TagArray& tags, DataArray& data,
                           const AddressParts& parts, Cycle now, std::uint32_t t_data) {
  RemoteCheck check = verify_remote(tags, data, parts);
  if (!check.available) return {};
  const BankAccess access{request.core_id, request.request_id, parts.set_index};
  const Cycle start = data.bank_schedule({&access, 1}, now).front();
  return {RemoteAccess::Outcome::Data, check.value, start + t_data};
}

}  // namespace atasim
