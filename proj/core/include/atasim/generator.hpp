#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "atasim/trace.hpp"

namespace atasim {

inline constexpr Address kSharedBase = 0x10000000;
inline constexpr Address kPrivateBase = 0x40000000;
inline constexpr Address kPrivateSpan = 0x01000000;

struct GenParams {
  std::uint32_t cores = 10;
  std::uint64_t lines_private = 256;
  std::uint64_t lines_shared = 128;
  double shared_prob = 0.5;
  std::uint64_t requests_per_core = 4096;
  double zipf_s = 0.8;
  std::uint64_t stride = 1;
  std::uint64_t seed = 1;
  double store_prob = 0.0;  // stores only ever target the private region
  std::uint32_t line_size = 128;
  std::uint32_t sector_size = 32;
  bool operator==(const GenParams&) const = default;
};

// One message per unusable parameter; empty when generate() will succeed.
std::vector<std::string> gen_param_violations(const GenParams& params);

// Each instruction is a walk over the sectors of one line, issued on consecutive cycles by
// one core. Shared lines are Zipf-ranked, private lines follow a per-core strided cursor.
// Throws ConfigError on invalid parameters.
std::vector<TraceRecord> generate(const GenParams& params);

bool is_gen_parameter(const std::string& name);
void set_gen_parameter(GenParams& params, const std::string& name, double value);

}  // namespace atasim
