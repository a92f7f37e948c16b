#include "atasim/locality.hpp"

#include <set>
#include <unordered_map>

namespace atasim {

LocalityProfile analyze_locality(std::span<const TraceRecord> records, std::uint32_t line_size) {
  std::unordered_map<std::uint64_t, std::set<CoreId>> cores_of_line;
  for (const auto& r : records) cores_of_line[r.address / line_size].insert(r.core_id);

  LocalityProfile p;
  p.distinct_lines = cores_of_line.size();
  for (const auto& [line, cores] : cores_of_line) {
    ++p.sharing_histogram[static_cast<std::uint32_t>(cores.size())];
    if (cores.size() >= 2) ++p.replicated_lines;
    for (CoreId c : cores) ++p.footprint[c];
  }
  if (p.distinct_lines > 0) {
    p.replication_ratio =
        static_cast<double>(p.replicated_lines) / static_cast<double>(p.distinct_lines);
  }
  return p;
}

std::string locality_class(const LocalityProfile& profile, double threshold) {
  return profile.replication_ratio >= threshold ? "high" : "low";
}

}  // namespace atasim
