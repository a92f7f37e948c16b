#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "atasim/geometry.hpp"
#include "atasim/request.hpp"

namespace atasim {

struct BankAccess {
  CoreId core_id = 0;
  RequestId request_id = 0;
  std::uint64_t set_index = 0;
};

// Banked sector data array. Each bank admits one access per cycle; the data latency
// itself is pipelined, so a bank is only occupied for the admission cycle.
class DataArray {
 public:
  DataArray(std::uint32_t owner_cache_id, const CacheGeometry& geometry);

  std::uint32_t owner() const { return owner_; }
  std::uint32_t banks() const { return static_cast<std::uint32_t>(busy_until_.size()); }
  std::uint32_t bank_of(std::uint64_t set_index) const {
    return static_cast<std::uint32_t>(set_index % busy_until_.size());
  }
  Cycle busy_until(std::uint32_t bank) const { return busy_until_[bank]; }

  // Data accesses still waiting for their bank slot at `now`.
  std::uint64_t queued(Cycle now) const;

  // Same-cycle accesses: distinct banks start at `now`, a shared bank serves its accesses
  // on consecutive cycles ordered by (core_id, request_id). Start cycles come back in
  // input order.
  std::vector<Cycle> bank_schedule(std::span<const BankAccess> accesses, Cycle now);

  std::uint64_t conflict_cycles() const { return conflict_cycles_; }
  std::uint64_t accesses() const { return accesses_; }

  Token read(std::uint64_t line_address, std::uint32_t sector) const;
  void write(std::uint64_t line_address, std::uint32_t sector, Token value);
  // Forget a line's data (eviction); returns its per-sector tokens.
  std::vector<Token> drop(std::uint64_t line_address);
  bool holds(std::uint64_t line_address) const { return values_.count(line_address) != 0; }

 private:
  std::uint32_t owner_;
  std::uint32_t sectors_per_line_;
  std::vector<Cycle> busy_until_;
  std::uint64_t conflict_cycles_ = 0;
  std::uint64_t accesses_ = 0;
  std::unordered_map<std::uint64_t, std::vector<Token>> values_;
};

}  // namespace atasim
