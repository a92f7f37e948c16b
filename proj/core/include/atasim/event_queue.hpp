#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <vector>

#include "atasim/geometry.hpp"

namespace atasim {

// Min-ordered by (cycle, sequence number). Equal-cycle events run in scheduling order.
class EventQueue {
 public:
  using Action = std::function<void()>;

  // Throws std::logic_error when `cycle` lies before the current time.
  void schedule(Cycle cycle, Action action);

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  std::optional<Cycle> next_cycle() const;
  Cycle now() const { return now_; }

  // Moves the clock forward (never backward).
  void advance_to(Cycle cycle);

  // Runs every event scheduled at the current cycle, including ones scheduled for the
  // current cycle while running. Returns how many ran.
  std::size_t run_current();

 private:
  struct Item {
    Cycle cycle;
    std::uint64_t seq;
    Action action;
  };
  struct Later {
    bool operator()(const Item& a, const Item& b) const {
      return a.cycle != b.cycle ? a.cycle > b.cycle : a.seq > b.seq;
    }
  };
  std::priority_queue<Item, std::vector<Item>, Later> heap_;
  std::uint64_t next_seq_ = 0;
  Cycle now_ = 0;
};

}  // namespace atasim
