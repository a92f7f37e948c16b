#include "atasim/l2_partition.hpp"

#include <algorithm>

namespace atasim {

L2Partition::L2Partition(std::uint32_t partition_id, std::uint32_t partitions,
                         const CacheGeometry& geometry, std::uint32_t t_l2, std::uint32_t t_mem)
    : id_(partition_id),
      partitions_(partitions),
      geometry_(geometry),
      t_l2_(t_l2),
      t_mem_(t_mem),
      tags_(partition_id, geometry) {}

AddressParts L2Partition::local_parts(std::uint64_t line_address, std::uint32_t sector) const {
  // Lines are interleaved across partitions; index sets with the partition-local line.
  const std::uint64_t local = line_address / partitions_;
  AddressParts p;
  p.line_address = local;
  p.set_index = local % tags_.sets();
  p.tag = local / tags_.sets();
  p.sector_index = sector;
  return p;
}

Cycle L2Partition::admit(Cycle arrival) {
  const Cycle start = std::max(arrival, busy_until_);
  busy_until_ = start + 1;
  return start;
}

void L2Partition::evict(const Eviction& ev) {
  const std::uint64_t global_line = ev.line_address * partitions_ + id_;
  for (std::uint32_t s = 0; s < geometry_.sectors_per_line(); ++s) {
    const std::uint64_t k = key(global_line, s);
    if (ev.dirty && ((ev.sector_valid >> s) & 1u)) {
      if (auto it = values_.find(k); it != values_.end()) memory_[k] = it->second;
    }
    values_.erase(k);
    ready_.erase(k);
  }
}

L2Result L2Partition::access(std::uint64_t line_address, std::uint32_t sector, Cycle arrival) {
  L2Result r;
  r.start = admit(arrival);
  ++accesses_;
  const AddressParts parts = local_parts(line_address, sector);
  const std::uint64_t k = key(line_address, sector);
  const TagEntry* e = tags_.find(parts);
  if (e != nullptr && e->sector_is_valid(sector)) {
    r.hit = true;
    ++hits_;
    tags_.touch(parts);
    r.ready = r.start + t_l2_;
    if (auto it = ready_.find(k); it != ready_.end()) {
      r.ready = std::max(r.ready, it->second);
      if (it->second <= r.start) ready_.erase(it);
    }
    auto v = values_.find(k);
    r.value = v == values_.end() ? 0 : v->second;
    return r;
  }
  InstallResult ins = tags_.install_line(parts, sector);
  if (ins.evicted) evict(*ins.evicted);
  auto m = memory_.find(k);
  r.value = m == memory_.end() ? 0 : m->second;
  values_[k] = r.value;
  r.ready = r.start + t_l2_ + t_mem_;
  ready_[k] = r.ready;
  return r;
}

Cycle L2Partition::writeback(std::uint64_t line_address, std::span<const Token> sectors,
                             std::uint64_t sector_mask, Cycle arrival) {
  const Cycle start = admit(arrival);
  ++writebacks_;
  for (std::uint32_t s = 0; s < sectors.size(); ++s) {
    if (!((sector_mask >> s) & 1u)) continue;
    const AddressParts parts = local_parts(line_address, s);
    const std::uint64_t k = key(line_address, s);
    TagEntry* e = tags_.find(parts);
    if (e != nullptr) {
      tags_.complete_fill(parts, s, true);
      values_[k] = sectors[s];
    } else {
      memory_[k] = sectors[s];
    }
  }
  return start;
}

Token L2Partition::peek(std::uint64_t line_address, std::uint32_t sector) const {
  const std::uint64_t k = key(line_address, sector);
  const TagEntry* e = tags_.find(local_parts(line_address, sector));
  if (e != nullptr && e->sector_is_valid(sector)) {
    auto it = values_.find(k);
    return it == values_.end() ? 0 : it->second;
  }
  auto m = memory_.find(k);
  return m == memory_.end() ? 0 : m->second;
}

}  // namespace atasim
