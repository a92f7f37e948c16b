#include "atasim/event_queue.hpp"

#include <stdexcept>
#include <string>

namespace atasim {

void EventQueue::schedule(Cycle cycle, Action action) {
  if (cycle < now_) {
    throw std::logic_error("event scheduled in the past: " + std::to_string(cycle) + " < " +
                           std::to_string(now_));
  }
  heap_.push(Item{cycle, next_seq_++, std::move(action)});
}

std::optional<Cycle> EventQueue::next_cycle() const {
  if (heap_.empty()) return std::nullopt;
  return heap_.top().cycle;
}

void EventQueue::advance_to(Cycle cycle) {
  if (cycle < now_) throw std::logic_error("time moved backward");
  now_ = cycle;
}

std::size_t EventQueue::run_current() {
  std::size_t n = 0;
  while (!heap_.empty() && heap_.top().cycle == now_) {
    // priority_queue::top is const; the action is moved out via a copy of the item.
    Item item = heap_.top();
    heap_.pop();
    item.action();
    ++n;
  }
  return n;
}

}  // namespace atasim
