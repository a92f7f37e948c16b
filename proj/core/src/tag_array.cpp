#include "atasim/tag_array.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace atasim {

TagArray::TagArray(std::uint32_t owner_cache_id, const CacheGeometry& geometry)
    : owner_(owner_cache_id),
      geometry_(geometry),
      sets_(geometry.sets()),
      entries_(sets_ * geometry.ways) {}

const TagEntry& TagArray::entry(std::uint64_t set_index, std::uint32_t way) const {
  return entries_[set_index * geometry_.ways + way];
}

TagEntry& TagArray::entry(std::uint64_t set_index, std::uint32_t way) {
  return entries_[set_index * geometry_.ways + way];
}

std::optional<std::uint32_t> TagArray::find_way(std::uint64_t set_index,
                                                std::uint64_t tag) const {
  for (std::uint32_t w = 0; w < geometry_.ways; ++w) {
    const TagEntry& e = entry(set_index, w);
    if (e.in_use() && e.tag == tag) return w;
  }
  return std::nullopt;
}

const TagEntry* TagArray::find(const AddressParts& parts) const {
  auto way = find_way(parts.set_index, parts.tag);
  return way ? &entry(parts.set_index, *way) : nullptr;
}

TagEntry* TagArray::find(const AddressParts& parts) {
  auto way = find_way(parts.set_index, parts.tag);
  return way ? &entry(parts.set_index, *way) : nullptr;
}

std::uint32_t TagArray::lru_victim(std::uint64_t set_index) const {
  std::uint32_t victim = 0;
  std::uint64_t oldest = UINT64_MAX;
  for (std::uint32_t w = 0; w < geometry_.ways; ++w) {
    const TagEntry& e = entry(set_index, w);
    if (!e.in_use()) return w;
    if (e.lru_stamp < oldest) {
      oldest = e.lru_stamp;
      victim = w;
    }
  }
  return victim;
}

InstallResult TagArray::install_line(const AddressParts& parts, std::uint32_t sector,
                                     SectorFill fill) {
  const std::uint64_t bit = std::uint64_t{1} << sector;
  InstallResult result;
  if (auto way = find_way(parts.set_index, parts.tag)) {
    TagEntry& e = entry(parts.set_index, *way);
    if (fill == SectorFill::Valid) {
      e.sector_valid |= bit;
      e.sector_reserved &= ~bit;
    } else if (!(e.sector_valid & bit)) {
      e.sector_reserved |= bit;
    }
    e.lru_stamp = tick();
    result.way = *way;
    return result;
  }

  const std::uint32_t way = lru_victim(parts.set_index);
  TagEntry& e = entry(parts.set_index, way);
  if (e.in_use()) {
    result.evicted = Eviction{e.tag * sets_ + parts.set_index,
                              parts.set_index,
                              way,
                              e.tag,
                              e.sector_valid,
                              e.dirty && e.sector_valid != 0};
  }
  e = TagEntry{};
  e.tag = parts.tag;
  (fill == SectorFill::Valid ? e.sector_valid : e.sector_reserved) = bit;
  e.lru_stamp = tick();
  result.way = way;
  result.allocated = true;
  return result;
}

void TagArray::touch(const AddressParts& parts) {
  TagEntry* e = find(parts);
  if (e == nullptr) {
    throw std::logic_error("touch of absent line " + std::to_string(parts.line_address) +
                           " in cache " + std::to_string(owner_));
  }
  e->lru_stamp = tick();
}

bool TagArray::complete_fill(const AddressParts& parts, std::uint32_t sector, bool make_dirty) {
  TagEntry* e = find(parts);
  if (e == nullptr) return false;
  const std::uint64_t bit = std::uint64_t{1} << sector;
  e->sector_valid |= bit;
  e->sector_reserved &= ~bit;
  if (make_dirty) e->dirty = true;
  return true;
}

void TagArray::dump(std::ostream& out) const {
  const std::uint32_t spl = geometry_.sectors_per_line();
  for (std::uint64_t s = 0; s < sets_; ++s) {
    for (std::uint32_t w = 0; w < geometry_.ways; ++w) {
      const TagEntry& e = entry(s, w);
      if (e.sector_valid == 0) continue;
      std::string sectors;
      for (std::uint32_t i = 0; i < spl; ++i) sectors += e.sector_is_valid(i) ? '1' : '0';
      char tag_hex[32];
      std::snprintf(tag_hex, sizeof tag_hex, "%llx", static_cast<unsigned long long>(e.tag));
      out << "cache=" << owner_ << " set=" << s << " way=" << w << " tag=" << tag_hex
          << " sectors=" << sectors << " dirty=" << (e.dirty ? 1 : 0) << " lru=" << e.lru_stamp
          << '\n';
    }
  }
}

std::string PresenceVector::to_string() const {
  std::string out = "[";
  for (std::uint32_t i = 0; i < width; ++i) {
    if (i) out += ',';
    out += bit(i) ? '1' : '0';
  }
  return out + "]";
}

PresenceVector lookup_one(const AddressParts& parts, std::span<const TagArray* const> arrays) {
  PresenceVector pv;
  pv.width = static_cast<std::uint32_t>(arrays.size());
  for (std::uint32_t i = 0; i < arrays.size(); ++i) {
    const TagEntry* e = arrays[i]->find(parts);
    if (e == nullptr) continue;
    pv.bits |= std::uint64_t{1} << i;
    if (e->sector_is_valid(parts.sector_index)) pv.hit_sector |= std::uint64_t{1} << i;
  }
  return pv;
}

std::vector<PresenceVector> aggregated_lookup(std::span<const LookupRequest> requests,
                                              std::span<const TagArray* const> arrays) {
  // The tag selector hands each request the tags of its own set from every array; with
  // one bank per set there is nothing to serialize, so this is a pure function of state.
  std::vector<PresenceVector> out;
  out.reserve(requests.size());
  for (const LookupRequest& r : requests) out.push_back(lookup_one(r.parts, arrays));
  return out;
}

}  // namespace atasim
