#pragma once

#include <cstdint>
#include <optional>

#include "atasim/geometry.hpp"

namespace atasim {

using RequestId = std::uint64_t;
using CoreId = std::uint32_t;

// Data values are opaque tokens. Memory starts at token 0; a store writes its own
// request id + 1.
using Token = std::uint64_t;

enum class AccessKind : std::uint8_t { Load, Store };

struct MemRequest {
  RequestId request_id = 0;
  CoreId core_id = 0;
  Address address = 0;
  AccessKind kind = AccessKind::Load;
  std::uint64_t instruction_id = 0;
  Cycle issue_cycle = 0;
  std::optional<Cycle> completion_cycle;

  Token store_token() const { return request_id + 1; }
};

}  // namespace atasim
