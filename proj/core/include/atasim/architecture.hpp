#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "atasim/config.hpp"

namespace atasim {

// Cycle-charged steps a request can traverse. The engine interprets these per variant.
enum class Stage : std::uint8_t {
  TagLookup,        // local (or aggregated) tag comparison, t_tag
  LocalData,        // bank-scheduled local data access, t_data
  IntraHop,         // one traversal of the cluster crossbar
  RemoteTagProbe,   // one tag-bank cycle at a peer cache (remote-sharing probes)
  RemoteData,       // bank-scheduled data access at a peer or home cache, t_data
  GlobalHop,        // one traversal of the cores<->L2 crossbar
  L2Access,         // t_l2 (+ t_mem on an L2 miss)
  Fill,             // bank-scheduled write of returned data, t_data
};

std::string to_string(Stage stage);

struct ArchitecturePipeline {
  Architecture variant = Architecture::Private;
  bool aggregated_tags = false;     // lookups see every tag array of the cluster
  bool probes_on_miss = false;      // local misses broadcast probes before L2
  bool noc_to_l1 = false;           // every access crosses the cluster crossbar to a home cache
  bool replicates = true;           // a line may live in several L1s of a cluster
  std::vector<Stage> local_hit;
  std::vector<Stage> remote_hit;    // empty when the variant has no remote hits
  std::vector<Stage> miss;
};

ArchitecturePipeline describe_pipeline(Architecture arch);

// Decoupled-sharing home: cluster-local cache index owning the line.
inline std::uint32_t home_cache(std::uint64_t line_address, std::uint32_t cores_per_cluster) {
  return static_cast<std::uint32_t>(line_address % cores_per_cluster);
}

// Uncontended stage sums under `config` (message sizes: 8 B requests, 32 B sectors).
struct IdleLatency {
  Cycle local_hit = 0;
  Cycle remote_hit = 0;
  Cycle l2_hit_miss = 0;  // L1 miss served by an L2 hit
  Cycle l2_miss = 0;      // L1 miss that also misses in L2
  Cycle probe_round_trip = 0;
};

IdleLatency idle_latency(const SimConfig& config, Architecture arch);

}  // namespace atasim
