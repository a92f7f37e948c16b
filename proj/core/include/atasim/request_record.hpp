#pragma once

#include <cstdint>
#include <optional>

#include "atasim/request.hpp"

namespace atasim {

enum class L1Outcome : std::uint8_t { Pending, LocalHit, RemoteHit, Miss };

const char* to_string(L1Outcome outcome);

// Timestamps and classification of one request as it moves through the hierarchy.
struct RequestRecord {
  MemRequest request;
  Cycle trace_cycle = 0;
  bool issued = false;
  Cycle tag_done = 0;               // cycle the (final) tag lookup was evaluated
  std::optional<Cycle> l1_done;     // hit served, or miss handed to the L2 path / MSHR
  std::optional<Cycle> l2_depart;   // request injected towards L2 (fetch owners only)
  L1Outcome outcome = L1Outcome::Pending;
  bool tag_hit = false;             // requested sector valid or already reserved locally
  bool merged = false;              // joined an in-flight fetch
  bool redirected = false;          // remote copy unusable at data-access time
  std::uint32_t served_by = 0;      // cache id that supplied the data
  Token value = 0;                  // loaded value, or value written by a store
};

}  // namespace atasim
