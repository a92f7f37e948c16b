#include "atasim/data_array.hpp"

#include <algorithm>
#include <numeric>

namespace atasim {

DataArray::DataArray(std::uint32_t owner_cache_id, const CacheGeometry& geometry)
    : owner_(owner_cache_id),
      sectors_per_line_(geometry.sectors_per_line()),
      busy_until_(geometry.data_banks, 0) {}

std::uint64_t DataArray::queued(Cycle now) const {
  std::uint64_t n = 0;
  for (Cycle b : busy_until_) n += b > now ? b - now : 0;
  return n;
}

std::vector<Cycle> DataArray::bank_schedule(std::span<const BankAccess> accesses, Cycle now) {
  std::vector<std::size_t> order(accesses.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const BankAccess& x = accesses[a];
    const BankAccess& y = accesses[b];
    if (x.core_id != y.core_id) return x.core_id < y.core_id;
    return x.request_id < y.request_id;
  });
  std::vector<Cycle> start(accesses.size());
  for (std::size_t i : order) {
    Cycle& busy = busy_until_[bank_of(accesses[i].set_index)];
    const Cycle s = std::max(now, busy);
    busy = s + 1;
    conflict_cycles_ += s - now;
    ++accesses_;
    start[i] = s;
  }
  return start;
}

Token DataArray::read(std::uint64_t line_address, std::uint32_t sector) const {
  auto it = values_.find(line_address);
  return it == values_.end() ? 0 : it->second[sector];
}

void DataArray::write(std::uint64_t line_address, std::uint32_t sector, Token value) {
  auto [it, inserted] = values_.try_emplace(line_address);
  if (inserted) it->second.assign(sectors_per_line_, 0);
  it->second[sector] = value;
}

std::vector<Token> DataArray::drop(std::uint64_t line_address) {
  auto it = values_.find(line_address);
  if (it == values_.end()) return std::vector<Token>(sectors_per_line_, 0);
  std::vector<Token> out = std::move(it->second);
  values_.erase(it);
  return out;
}

}  // namespace atasim
