#include "atasim/mshr.hpp"

#include <stdexcept>
#include <string>

namespace atasim {

bool Mshr::in_flight(std::uint64_t line, std::uint32_t sector) const {
  auto it = entries_.find(line);
  return it != entries_.end() && it->second.sectors.count(sector) != 0;
}

void Mshr::start(std::uint64_t line, std::uint32_t sector, RequestId first) {
  if (!can_accept(line)) throw std::logic_error("MSHR full");
  auto& sectors = entries_[line].sectors;
  if (!sectors.emplace(sector, std::vector<RequestId>{first}).second) {
    throw std::logic_error("MSHR sector already in flight for line " + std::to_string(line));
  }
}

void Mshr::merge(std::uint64_t line, std::uint32_t sector, RequestId waiter) {
  auto it = entries_.find(line);
  if (it == entries_.end() || it->second.sectors.count(sector) == 0) {
    throw std::logic_error("MSHR merge into idle sector of line " + std::to_string(line));
  }
  it->second.sectors[sector].push_back(waiter);
  ++merges_;
}

Mshr::Completion Mshr::complete(std::uint64_t line, std::uint32_t sector) {
  auto it = entries_.find(line);
  if (it == entries_.end()) {
    throw std::logic_error("MSHR fill for unknown line " + std::to_string(line));
  }
  auto sit = it->second.sectors.find(sector);
  if (sit == it->second.sectors.end()) {
    throw std::logic_error("MSHR fill for idle sector of line " + std::to_string(line));
  }
  Completion c;
  c.waiters = std::move(sit->second);
  it->second.sectors.erase(sit);
  if (it->second.sectors.empty()) {
    entries_.erase(it);
    c.entry_released = true;
  }
  return c;
}

}  // namespace atasim
