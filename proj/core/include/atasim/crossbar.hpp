#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "atasim/geometry.hpp"

namespace atasim {

// Message sizes in bytes.
struct MessageSizes {
  std::uint32_t request = 8;
  std::uint32_t sector = 32;
  std::uint32_t line = 128;
};

struct Message {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  std::uint64_t bytes = 0;
};

// Single-stage crossbar with output-port contention only. A message occupies its output
// for ceil(bytes / flit_bytes) cycles and is delivered hop_latency cycles after its last
// flit leaves. Same-cycle senders to one output are served round-robin from the port's
// pointer, which moves past each winner (iSLIP-style grant without virtual channels).
class Crossbar {
 public:
  Crossbar(std::string name, std::uint32_t inputs, std::uint32_t outputs,
           std::uint32_t hop_latency, std::uint32_t flit_bytes);

  const std::string& name() const { return name_; }
  std::uint32_t inputs() const { return inputs_; }
  std::uint32_t outputs() const { return static_cast<std::uint32_t>(busy_until_.size()); }
  std::uint32_t hop_latency() const { return hop_latency_; }

  std::uint64_t flits_for(std::uint64_t bytes) const;

  Cycle send(std::uint32_t src, std::uint32_t dst, std::uint64_t bytes, Cycle now);

  // All messages injected in cycle `now`. Deliveries come back in input order.
  std::vector<Cycle> send_batch(std::span<const Message> messages, Cycle now);

  Cycle busy_until(std::uint32_t output) const { return busy_until_[output]; }
  std::uint32_t rr_pointer(std::uint32_t output) const { return rr_pointer_[output]; }
  std::uint64_t total_flits() const { return total_flits_; }
  std::uint64_t messages() const { return messages_; }
  const std::vector<std::uint64_t>& port_flits() const { return port_flits_; }

 private:
  std::string name_;
  std::uint32_t inputs_;
  std::uint32_t hop_latency_;
  std::uint32_t flit_bytes_;
  std::vector<Cycle> busy_until_;
  std::vector<std::uint32_t> rr_pointer_;
  std::vector<std::uint64_t> port_flits_;
  std::uint64_t total_flits_ = 0;
  std::uint64_t messages_ = 0;
};

}  // namespace atasim
