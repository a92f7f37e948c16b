#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "atasim/trace.hpp"

namespace atasim {

struct LocalityProfile {
  std::uint64_t distinct_lines = 0;
  std::uint64_t replicated_lines = 0;  // touched by at least two cores
  double replication_ratio = 0.0;
  std::map<std::uint32_t, std::uint64_t> sharing_histogram;  // cores touching -> lines
  std::map<CoreId, std::uint64_t> footprint;                 // core -> distinct lines
  bool operator==(const LocalityProfile&) const = default;
};

LocalityProfile analyze_locality(std::span<const TraceRecord> records,
                                 std::uint32_t line_size = 128);

// "high" when the replication ratio reaches `threshold`, else "low".
std::string locality_class(const LocalityProfile& profile, double threshold = 0.5);

}  // namespace atasim
