#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "atasim/request.hpp"

namespace atasim {

// Miss-status holding registers keyed by line address. An entry tracks every sector of
// the line that is being fetched; each in-flight sector keeps its waiters in arrival
// order (the request that started the fetch first).
class Mshr {
 public:
  explicit Mshr(std::uint32_t capacity) : capacity_(capacity) {}

  std::uint32_t capacity() const { return capacity_; }
  std::size_t size() const { return entries_.size(); }
  bool has_entry(std::uint64_t line) const { return entries_.count(line) != 0; }
  bool full() const { return entries_.size() >= capacity_; }
  // True when a miss on `line` can be recorded without a new entry or with a free one.
  bool can_accept(std::uint64_t line) const { return has_entry(line) || !full(); }

  bool in_flight(std::uint64_t line, std::uint32_t sector) const;

  // Start fetching a sector. Precondition: can_accept(line) and !in_flight(line, sector).
  void start(std::uint64_t line, std::uint32_t sector, RequestId first);
  // Add a waiter to an in-flight sector.
  void merge(std::uint64_t line, std::uint32_t sector, RequestId waiter);

  struct Completion {
    std::vector<RequestId> waiters;
    bool entry_released = false;
  };
  // The sector's fill arrived: hand back its waiters and retire the sector.
  Completion complete(std::uint64_t line, std::uint32_t sector);

  std::uint64_t merges() const { return merges_; }

 private:
  struct Entry {
    std::map<std::uint32_t, std::vector<RequestId>> sectors;
  };
  std::uint32_t capacity_;
  std::map<std::uint64_t, Entry> entries_;
  std::uint64_t merges_ = 0;
};

}  // namespace atasim
