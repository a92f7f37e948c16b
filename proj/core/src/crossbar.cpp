#include "atasim/crossbar.hpp"

#include <algorithm>
#include <stdexcept>

namespace atasim {

Crossbar::Crossbar(std::string name, std::uint32_t inputs, std::uint32_t outputs,
                   std::uint32_t hop_latency, std::uint32_t flit_bytes)
    : name_(std::move(name)),
      inputs_(inputs),
      hop_latency_(hop_latency),
      flit_bytes_(flit_bytes),
      busy_until_(outputs, 0),
      rr_pointer_(outputs, 0),
      port_flits_(outputs, 0) {}

std::uint64_t Crossbar::flits_for(std::uint64_t bytes) const {
  return std::max<std::uint64_t>(1, (bytes + flit_bytes_ - 1) / flit_bytes_);
}

Cycle Crossbar::send(std::uint32_t src, std::uint32_t dst, std::uint64_t bytes, Cycle now) {
  const Message m{src, dst, bytes};
  return send_batch({&m, 1}, now).front();
}

std::vector<Cycle> Crossbar::send_batch(std::span<const Message> messages, Cycle now) {
  for (const Message& m : messages) {
    if (m.src >= inputs_ || m.dst >= outputs()) {
      throw std::out_of_range(name_ + ": port out of range (" + std::to_string(m.src) + " -> " +
                              std::to_string(m.dst) + ")");
    }
  }
  // Per output, grant repeatedly to the waiting source closest to the pointer; the pointer
  // then moves past the winner. Ties within one source keep submission order.
  std::vector<Cycle> delivery(messages.size());
  std::vector<std::vector<std::size_t>> waiting(outputs());
  for (std::size_t i = 0; i < messages.size(); ++i) waiting[messages[i].dst].push_back(i);
  for (std::uint32_t out = 0; out < outputs(); ++out) {
    auto& w = waiting[out];
    while (!w.empty()) {
      const std::uint32_t p = rr_pointer_[out];
      auto best = w.begin();
      for (auto it = w.begin(); it != w.end(); ++it) {
        if ((messages[*it].src + inputs_ - p) % inputs_ <
            (messages[*best].src + inputs_ - p) % inputs_) {
          best = it;
        }
      }
      const std::size_t i = *best;
      w.erase(best);
      const Message& m = messages[i];
      const std::uint64_t flits = flits_for(m.bytes);
      const Cycle start = std::max(now, busy_until_[out]);
      busy_until_[out] = start + flits;
      delivery[i] = start + flits + hop_latency_;
      rr_pointer_[out] = (m.src + 1) % inputs_;
      port_flits_[out] += flits;
      total_flits_ += flits;
      ++messages_;
    }
  }
  return delivery;
}

}  // namespace atasim
