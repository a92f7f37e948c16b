#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "atasim/architecture.hpp"
#include "atasim/config.hpp"
#include "atasim/crossbar.hpp"
#include "atasim/data_array.hpp"
#include "atasim/distributor.hpp"
#include "atasim/event_log.hpp"
#include "atasim/event_queue.hpp"
#include "atasim/l2_partition.hpp"
#include "atasim/mshr.hpp"
#include "atasim/request_record.hpp"
#include "atasim/tag_array.hpp"

namespace atasim {

struct HardwareCounters {
  std::uint64_t bank_conflict_cycles = 0;
  std::uint64_t noc_flits = 0;
  std::uint64_t intra_cluster_flits = 0;
  std::uint64_t probe_messages = 0;
  std::uint64_t l2_hits = 0;
  std::uint64_t l2_misses = 0;
  std::uint64_t l2_writebacks = 0;
  std::uint64_t mshr_merges = 0;
  std::uint64_t remote_redirects = 0;
  std::vector<std::uint64_t> l2_partition_accesses;
  std::vector<std::uint64_t> l2_partition_hits;
  std::map<std::string, std::vector<std::uint64_t>> noc_port_flits;
};

// All L1s, crossbars and L2 partitions of one simulated GPU, wired per the selected
// architecture. Work arrives through issue(); same-cycle contention is resolved in
// flush(), which the engine calls until it reports no more work for the cycle.
class MemorySystem {
 public:
  using CompletionHook = std::function<void(RequestId, Cycle)>;

  MemorySystem(const SimConfig& config, EventQueue& queue, std::vector<RequestRecord>& records,
               EventLog& log, CompletionHook on_complete);

  const SimConfig& config() const { return config_; }
  const ArchitecturePipeline& pipeline() const { return pipeline_; }

  void issue(RequestId id, Cycle now);

  // Resolves batched tag lookups and resource arbitration for `now`. Returns false when
  // there was nothing to do.
  bool flush(Cycle now);

  bool quiescent() const;

  const TagArray& l1_tags(std::uint32_t cache) const { return tags_[cache]; }
  const DataArray& l1_data(std::uint32_t cache) const { return data_[cache]; }
  const Mshr& l1_mshr(std::uint32_t cache) const { return mshr_[cache]; }
  std::uint32_t l2_partitions() const { return static_cast<std::uint32_t>(l2_.size()); }
  const L2Partition& l2(std::uint32_t partition) const { return l2_[partition]; }
  const Crossbar& l2_request_net() const { return xbars_[kL2Request]; }
  const Crossbar& l2_reply_net() const { return xbars_[kL2Reply]; }
  const Crossbar& cluster_forward_net(std::uint32_t cluster) const {
    return xbars_[2 + 2 * cluster];
  }
  const Crossbar& cluster_reverse_net(std::uint32_t cluster) const {
    return xbars_[3 + 2 * cluster];
  }
  std::uint64_t stalled(std::uint32_t cache) const { return stall_[cache].size(); }

  HardwareCounters counters() const;

 private:
  using Continuation = std::function<void(Cycle)>;
  static constexpr std::size_t kL2Request = 0;
  static constexpr std::size_t kL2Reply = 1;

  struct PendingLookup {
    RequestId id;
    std::uint32_t cache;
  };
  struct PendingBank {
    BankAccess access;
    Continuation then;
  };
  struct PendingSend {
    Message message;
    Continuation then;
  };
  struct PendingL2 {
    CoreId core;
    RequestId id;
    Continuation then;
  };
  struct ProbeState {
    std::uint32_t remaining = 0;
    bool found = false;
    std::uint32_t best = 0;
    Token value = 0;
  };
  enum class LookupResult { Done, Stalled };
  enum class FillSource { Remote, L2 };

  std::size_t forward_net(std::uint32_t cluster) const { return 2 + 2 * cluster; }
  std::size_t reverse_net(std::uint32_t cluster) const { return 3 + 2 * cluster; }
  std::uint32_t global_cache(std::uint32_t cluster, std::uint32_t index) const {
    return cluster * config_.cores_per_cluster + index;
  }
  AddressParts parts_of(std::uint64_t line, std::uint32_t sector) const;
  RequestRecord& rec(RequestId id) { return records_[id]; }

  // Resource submission; continuations receive the granted/delivery cycle.
  void submit_bank(std::uint32_t cache, const BankAccess& access, Continuation then);
  void submit_probe_bank(std::uint32_t cache, const BankAccess& access, Continuation then);
  void submit_send(std::size_t xbar, Message message, Continuation then);
  void submit_l2(std::uint32_t partition, CoreId core, RequestId id, Continuation then);
  bool arbitrate(Cycle now);

  PresenceVector presence_for(RequestId id, std::uint32_t cache) const;
  std::uint32_t local_index(std::uint32_t cache) const;
  LookupResult lookup(RequestId id, std::uint32_t cache, const PresenceVector& presence,
                      Cycle now, bool draining);
  LookupResult miss_path(RequestId id, std::uint32_t cache, const AddressParts& parts,
                         const RoutingDecision& decision, Cycle now, bool draining);
  void handle_eviction(std::uint32_t cache, const Eviction& ev, RequestId cause, Cycle now);
  void depart_l2(std::uint32_t cache, std::uint64_t line, std::uint32_t sector, RequestId id,
                 Cycle now);
  void remote_fetch(std::uint32_t cache, std::uint32_t target, std::uint64_t line,
                    std::uint32_t sector, RequestId id, Cycle now);
  void start_probes(std::uint32_t cache, std::uint64_t line, std::uint32_t sector, RequestId id,
                    Cycle now);
  void probe_at(std::uint32_t cache, std::uint32_t peer, std::uint64_t line,
                std::uint32_t sector, RequestId id, Cycle now);
  void probe_response(std::uint32_t cache, std::uint32_t peer, std::uint64_t line,
                      std::uint32_t sector, RequestId id, bool hit, Token value, Cycle now);
  void fill(std::uint32_t cache, std::uint64_t line, std::uint32_t sector, Token value,
            FillSource source, std::uint32_t supplier, Cycle now);
  void writeback(std::uint32_t cache, std::uint64_t line, std::vector<Token> tokens,
                 std::uint64_t mask, CoreId core, RequestId cause, Cycle now);
  void served(RequestId id, std::uint32_t cache, Cycle ready);
  void mark_l1_done(RequestId id, Cycle at, Cycle now);
  void complete(RequestId id, Cycle cycle);
  void schedule_drain(std::uint32_t cache, Cycle now);
  void drain(std::uint32_t cache, Cycle now);

  SimConfig config_;
  ArchitecturePipeline pipeline_;
  MessageSizes sizes_;
  EventQueue& queue_;
  std::vector<RequestRecord>& records_;
  EventLog& log_;
  CompletionHook on_complete_;

  std::vector<TagArray> tags_;
  std::vector<DataArray> data_;
  std::vector<DataArray> probe_banks_;  // per-set tag banks seen by remote-sharing probes
  std::vector<Mshr> mshr_;
  std::vector<std::deque<RequestId>> stall_;
  std::vector<bool> drain_pending_;
  std::vector<Crossbar> xbars_;
  std::vector<L2Partition> l2_;
  std::unordered_map<RequestId, ProbeState> probes_;

  std::vector<std::vector<PendingLookup>> lookup_batch_;  // per cluster
  std::vector<std::vector<PendingBank>> bank_pending_;
  std::vector<std::vector<PendingBank>> probe_bank_pending_;
  std::vector<std::vector<PendingSend>> send_pending_;
  std::vector<std::vector<PendingL2>> l2_pending_;
  bool any_pending_ = false;

  std::uint64_t probe_messages_ = 0;
  std::uint64_t remote_redirects_ = 0;
};

}  // namespace atasim
