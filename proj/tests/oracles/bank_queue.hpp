#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

// Per-bank FIFO replay: requests of one cycle are served in (core, id) order, each bank
// takes one per cycle starting no earlier than when it becomes free.
namespace oracle {

struct BankRequest {
  std::uint32_t core;
  std::uint64_t id;
  std::uint32_t bank;
};

inline std::vector<std::uint64_t> bank_queue_starts(const std::vector<BankRequest>& reqs,
                                                    std::uint64_t now,
                                                    std::map<std::uint32_t, std::uint64_t>& free_at) {
  std::vector<std::size_t> order(reqs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(reqs[a].core, reqs[a].id) < std::tie(reqs[b].core, reqs[b].id);
  });
  std::vector<std::uint64_t> start(reqs.size());
  for (std::size_t i : order) {
    std::uint64_t& f = free_at[reqs[i].bank];
    start[i] = std::max(now, f);
    f = start[i] + 1;
  }
  return start;
}

}  // namespace oracle
