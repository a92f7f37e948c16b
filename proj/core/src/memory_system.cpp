#include "atasim/memory_system.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace atasim {

const char* to_string(L1Outcome outcome) {
  switch (outcome) {
    case L1Outcome::Pending: return "pending";
    case L1Outcome::LocalHit: return "local_hit";
    case L1Outcome::RemoteHit: return "remote_hit";
    case L1Outcome::Miss: return "miss";
  }
  return "?";
}

namespace {

std::string kv(const char* key, std::uint64_t value) {
  return std::string(key) + "=" + std::to_string(value);
}

}  // namespace

MemorySystem::MemorySystem(const SimConfig& config, EventQueue& queue,
                           std::vector<RequestRecord>& records, EventLog& log,
                           CompletionHook on_complete)
    : config_(validate_config(config)),
      pipeline_(describe_pipeline(config.architecture)),
      queue_(queue),
      records_(records),
      log_(log),
      on_complete_(std::move(on_complete)) {
  const std::uint32_t n = config_.num_cores;
  CacheGeometry tag_banks = config_.l1_geometry;
  tag_banks.data_banks = static_cast<std::uint32_t>(config_.l1_geometry.sets());
  for (std::uint32_t c = 0; c < n; ++c) {
    tags_.emplace_back(c, config_.l1_geometry);
    data_.emplace_back(c, config_.l1_geometry);
    probe_banks_.emplace_back(c, tag_banks);
    mshr_.emplace_back(config_.mshr_entries);
  }
  stall_.resize(n);
  drain_pending_.assign(n, false);

  xbars_.emplace_back("l2_request", n, config_.l2_partitions, config_.t_xbar_hop,
                      config_.flit_bytes);
  xbars_.emplace_back("l2_reply", config_.l2_partitions, n, config_.t_xbar_hop,
                      config_.flit_bytes);
  const std::uint32_t k = config_.cores_per_cluster;
  for (std::uint32_t cl = 0; cl < config_.clusters(); ++cl) {
    xbars_.emplace_back("cluster" + std::to_string(cl) + "_forward", k, k, config_.t_xbar_hop,
                        config_.flit_bytes);
    xbars_.emplace_back("cluster" + std::to_string(cl) + "_reverse", k, k, config_.t_xbar_hop,
                        config_.flit_bytes);
  }
  for (std::uint32_t p = 0; p < config_.l2_partitions; ++p) {
    l2_.emplace_back(p, config_.l2_partitions, config_.l2_geometry, config_.t_l2,
                     config_.t_mem);
  }

  lookup_batch_.resize(config_.clusters());
  bank_pending_.resize(n);
  probe_bank_pending_.resize(n);
  send_pending_.resize(xbars_.size());
  l2_pending_.resize(config_.l2_partitions);
}

AddressParts MemorySystem::parts_of(std::uint64_t line, std::uint32_t sector) const {
  const CacheGeometry& g = config_.l1_geometry;
  return decode_address(line * g.line_size + std::uint64_t{sector} * g.sector_size, g);
}

std::uint32_t MemorySystem::local_index(std::uint32_t cache) const {
  return pipeline_.aggregated_tags ? config_.index_in_cluster(cache) : 0;
}

PresenceVector MemorySystem::presence_for(RequestId id, std::uint32_t cache) const {
  const AddressParts parts = decode_address(records_[id].request.address, config_.l1_geometry);
  if (!pipeline_.aggregated_tags) {
    const TagArray* own = &tags_[cache];
    return lookup_one(parts, {&own, 1});
  }
  const std::uint32_t cl = config_.cluster_of(cache);
  std::vector<const TagArray*> arrays;
  for (std::uint32_t i = 0; i < config_.cores_per_cluster; ++i) {
    arrays.push_back(&tags_[global_cache(cl, i)]);
  }
  return lookup_one(parts, arrays);
}

// ---------------------------------------------------------------------------------------
// Entry point

void MemorySystem::issue(RequestId id, Cycle now) {
  RequestRecord& r = rec(id);
  r.issued = true;
  r.request.issue_cycle = now;
  const CoreId core = r.request.core_id;
  const std::uint32_t cl = config_.cluster_of(core);
  if (log_.enabled()) log_.record(now, "issue", id,
              kv("core", core) + " kind=" + (r.request.kind == AccessKind::Load ? "L" : "S") +
                  " " + kv("inst", r.request.instruction_id));

  if (!pipeline_.noc_to_l1) {
    queue_.schedule(now + config_.t_tag,
                    [this, id, core, cl] { lookup_batch_[cl].push_back({id, core}); });
    return;
  }
  const std::uint64_t line = line_of(r.request.address, config_.l1_geometry);
  const std::uint32_t home = home_cache(line, config_.cores_per_cluster);
  const std::uint32_t home_cache_id = global_cache(cl, home);
  submit_send(forward_net(cl), {config_.index_in_cluster(core), home, sizes_.request},
              [this, id, cl, home_cache_id](Cycle delivered) {
                queue_.schedule(delivered + config_.t_tag, [this, id, cl, home_cache_id] {
                  lookup_batch_[cl].push_back({id, home_cache_id});
                });
              });
}

// ---------------------------------------------------------------------------------------
// Same-cycle resolution

void MemorySystem::submit_bank(std::uint32_t cache, const BankAccess& access, Continuation then) {
  bank_pending_[cache].push_back({access, std::move(then)});
  any_pending_ = true;
}

void MemorySystem::submit_probe_bank(std::uint32_t cache, const BankAccess& access,
                                     Continuation then) {
  probe_bank_pending_[cache].push_back({access, std::move(then)});
  any_pending_ = true;
}

void MemorySystem::submit_send(std::size_t xbar, Message message, Continuation then) {
  send_pending_[xbar].push_back({message, std::move(then)});
  any_pending_ = true;
}

void MemorySystem::submit_l2(std::uint32_t partition, CoreId core, RequestId id,
                             Continuation then) {
  l2_pending_[partition].push_back({core, id, std::move(then)});
  any_pending_ = true;
}

bool MemorySystem::quiescent() const {
  if (any_pending_) return false;
  return std::all_of(lookup_batch_.begin(), lookup_batch_.end(),
                     [](const auto& b) { return b.empty(); });
}

bool MemorySystem::flush(Cycle now) {
  bool did = false;
  for (std::uint32_t cl = 0; cl < lookup_batch_.size(); ++cl) {
    if (lookup_batch_[cl].empty()) continue;
    did = true;
    std::vector<PendingLookup> batch = std::move(lookup_batch_[cl]);
    lookup_batch_[cl].clear();
    std::stable_sort(batch.begin(), batch.end(), [this](const auto& a, const auto& b) {
      const auto& x = records_[a.id].request;
      const auto& y = records_[b.id].request;
      return x.core_id != y.core_id ? x.core_id < y.core_id : x.request_id < y.request_id;
    });
    // Every comparison of the batch sees the tag state at the start of the cycle.
    std::vector<PresenceVector> presence;
    presence.reserve(batch.size());
    for (const auto& p : batch) presence.push_back(presence_for(p.id, p.cache));
    for (std::size_t i = 0; i < batch.size(); ++i) {
      lookup(batch[i].id, batch[i].cache, presence[i], now, false);
    }
  }
  while (arbitrate(now)) did = true;
  return did;
}

bool MemorySystem::arbitrate(Cycle now) {
  if (!any_pending_) return false;
  any_pending_ = false;

  auto run_banks = [now](std::vector<DataArray>& arrays,
                         std::vector<std::vector<PendingBank>>& pending) {
    for (std::uint32_t c = 0; c < pending.size(); ++c) {
      if (pending[c].empty()) continue;
      std::vector<PendingBank> batch = std::move(pending[c]);
      pending[c].clear();
      std::vector<BankAccess> accesses;
      for (const auto& b : batch) accesses.push_back(b.access);
      const std::vector<Cycle> start = arrays[c].bank_schedule(accesses, now);
      for (std::size_t i = 0; i < batch.size(); ++i) batch[i].then(start[i]);
    }
  };
  run_banks(data_, bank_pending_);
  run_banks(probe_banks_, probe_bank_pending_);

  for (std::size_t x = 0; x < send_pending_.size(); ++x) {
    if (send_pending_[x].empty()) continue;
    std::vector<PendingSend> batch = std::move(send_pending_[x]);
    send_pending_[x].clear();
    std::vector<Message> msgs;
    for (const auto& s : batch) msgs.push_back(s.message);
    const std::vector<Cycle> delivery = xbars_[x].send_batch(msgs, now);
    for (std::size_t i = 0; i < batch.size(); ++i) batch[i].then(delivery[i]);
  }

  for (std::uint32_t p = 0; p < l2_pending_.size(); ++p) {
    if (l2_pending_[p].empty()) continue;
    std::vector<PendingL2> batch = std::move(l2_pending_[p]);
    l2_pending_[p].clear();
    std::stable_sort(batch.begin(), batch.end(), [](const auto& a, const auto& b) {
      return a.core != b.core ? a.core < b.core : a.id < b.id;
    });
    for (auto& item : batch) item.then(now);
  }
  return true;
}

// ---------------------------------------------------------------------------------------
// Tag stage and request distribution

MemorySystem::LookupResult MemorySystem::lookup(RequestId id, std::uint32_t cache,
                                                const PresenceVector& presence, Cycle now,
                                                bool draining) {
  if (!draining && !stall_[cache].empty()) {
    stall_[cache].push_back(id);
    if (log_.enabled()) log_.record(now, "stall", id, kv("cache", cache));
    return LookupResult::Stalled;
  }
  RequestRecord& r = rec(id);
  const MemRequest& req = r.request;
  const AddressParts parts = decode_address(req.address, config_.l1_geometry);
  const std::uint32_t local = local_index(cache);
  TagArray& tags = tags_[cache];

  r.tag_done = now;
  if (log_.enabled()) {
    log_.record(now, "tag", id,
                "presence=" + presence.to_string() + " " + kv("cache", cache) + " " +
                    kv("line", parts.line_address) + " " + kv("sector", parts.sector_index));
  }
  if (const TagEntry* e = tags.find(parts)) {
    r.tag_hit = e->sector_is_valid(parts.sector_index) || e->sector_is_reserved(parts.sector_index);
  } else {
    r.tag_hit = false;
  }

  if (presence.sector_hit(local)) {
    tags.touch(parts);
    r.outcome = L1Outcome::LocalHit;
    if (req.kind == AccessKind::Load) {
      r.value = data_[cache].read(parts.line_address, parts.sector_index);
    } else {
      r.value = req.store_token();
      data_[cache].write(parts.line_address, parts.sector_index, r.value);
      tags.find(parts)->dirty = true;
    }
    r.served_by = cache;
    if (log_.enabled()) log_.record(now, "route", id, "decision=LocalHit " + kv("cache", cache));
    submit_bank(cache, {req.core_id, id, parts.set_index}, [this, id, cache](Cycle start) {
      served(id, cache, start + config_.t_data);
    });
    return LookupResult::Done;
  }

  RoutingDecision decision = RoutingDecision::miss();
  if (pipeline_.aggregated_tags && req.kind == AccessKind::Load) {
    std::vector<std::uint64_t> queued(config_.cores_per_cluster, 0);
    const std::uint32_t cl = config_.cluster_of(cache);
    for (std::uint32_t i = 0; i < config_.cores_per_cluster; ++i) {
      queued[i] = data_[global_cache(cl, i)].queued(now);
    }
    decision = distribute(presence, local, queued);
  }
  return miss_path(id, cache, parts, decision, now, draining);
}

MemorySystem::LookupResult MemorySystem::miss_path(RequestId id, std::uint32_t cache,
                                                   const AddressParts& parts,
                                                   const RoutingDecision& decision, Cycle now,
                                                   bool draining) {
  RequestRecord& r = rec(id);
  Mshr& mshr = mshr_[cache];
  const std::uint64_t line = parts.line_address;
  const std::uint32_t sector = parts.sector_index;
  if (!mshr.can_accept(line)) {
    if (!draining) stall_[cache].push_back(id);
    if (log_.enabled()) log_.record(now, "stall", id, kv("cache", cache) + " reason=mshr_full");
    return LookupResult::Stalled;
  }

  const InstallResult ins = tags_[cache].install_line(parts, sector, SectorFill::Reserved);
  if (ins.evicted) handle_eviction(cache, *ins.evicted, id, now);

  if (mshr.in_flight(line, sector)) {
    mshr.merge(line, sector, id);
    r.merged = true;
    if (log_.enabled()) log_.record(now, "route", id, "decision=Merge " + kv("cache", cache) + " " + kv("line", line));
    return LookupResult::Done;
  }
  mshr.start(line, sector, id);

  const std::uint32_t cl = config_.cluster_of(cache);
  if (decision.kind == RoutingDecision::Kind::RemoteHit) {
    const std::uint32_t target = global_cache(cl, decision.target);
    if (log_.enabled()) log_.record(now, "route", id,
                "decision=RemoteHit " + kv("target", target) + " " + kv("cache", cache));
    remote_fetch(cache, target, line, sector, id, now);
  } else if (pipeline_.probes_on_miss && r.request.kind == AccessKind::Load) {
    if (log_.enabled()) log_.record(now, "route", id, "decision=Probe " + kv("cache", cache));
    start_probes(cache, line, sector, id, now);
  } else {
    if (log_.enabled()) log_.record(now, "route", id, "decision=MissToL2 " + kv("cache", cache));
    depart_l2(cache, line, sector, id, now);
  }
  return LookupResult::Done;
}

void MemorySystem::handle_eviction(std::uint32_t cache, const Eviction& ev, RequestId cause,
                                   Cycle now) {
  std::vector<Token> tokens = data_[cache].drop(ev.line_address);
  if (!ev.dirty) return;
  if (log_.enabled()) log_.record(now, "evict_dirty", cause, kv("cache", cache) + " " + kv("line", ev.line_address));
  writeback(cache, ev.line_address, std::move(tokens), ev.sector_valid,
            records_[cause].request.core_id, cause, now);
}

// ---------------------------------------------------------------------------------------
// Paths out of the L1

void MemorySystem::depart_l2(std::uint32_t cache, std::uint64_t line, std::uint32_t sector,
                             RequestId id, Cycle now) {
  RequestRecord& r = rec(id);
  r.l2_depart = now;
  mark_l1_done(id, now, now);
  const std::uint32_t p = partition_of(line, config_.l2_partitions);
  const CoreId core = r.request.core_id;
  if (log_.enabled()) log_.record(now, "l2_depart", id, kv("cache", cache) + " " + kv("partition", p));
  submit_send(kL2Request, {cache, p, sizes_.request},
              [this, cache, line, sector, id, p, core](Cycle arrival) {
    queue_.schedule(arrival, [this, cache, line, sector, id, p, core, arrival] {
      submit_l2(p, core, id, [this, cache, line, sector, id, p, arrival](Cycle) {
        const L2Result res = l2_[p].access(line, sector, arrival);
        if (log_.enabled()) log_.record(res.start, "l2_access", id,
                    kv("partition", p) + " hit=" + (res.hit ? "1" : "0") + " " +
                        kv("ready", res.ready));
        const Token value = res.value;
        queue_.schedule(res.ready, [this, cache, line, sector, p, value] {
          submit_send(kL2Reply, {p, cache, sizes_.sector},
                      [this, cache, line, sector, value](Cycle delivered) {
            queue_.schedule(delivered, [this, cache, line, sector, value, delivered] {
              fill(cache, line, sector, value, FillSource::L2, cache, delivered);
            });
          });
        });
      });
    });
  });
}

void MemorySystem::remote_fetch(std::uint32_t cache, std::uint32_t target, std::uint64_t line,
                                std::uint32_t sector, RequestId id, Cycle) {
  const std::uint32_t cl = config_.cluster_of(cache);
  const std::uint32_t src = config_.index_in_cluster(cache);
  const std::uint32_t dst = config_.index_in_cluster(target);
  const CoreId core = records_[id].request.core_id;
  submit_send(forward_net(cl), {src, dst, sizes_.request},
              [this, cache, target, line, sector, id, cl, src, dst, core](Cycle arrival) {
    queue_.schedule(arrival, [=, this] {
      const AddressParts parts = parts_of(line, sector);
      const RemoteCheck check = verify_remote(tags_[target], data_[target], parts);
      if (!check.available) {
        ++remote_redirects_;
        rec(id).redirected = true;
        if (log_.enabled()) log_.record(arrival, "redirect_l2", id, kv("target", target));
        submit_send(reverse_net(cl), {dst, src, sizes_.request},
                    [this, cache, line, sector, id](Cycle back) {
          queue_.schedule(back, [this, cache, line, sector, id, back] {
            depart_l2(cache, line, sector, id, back);
          });
        });
        return;
      }
      if (log_.enabled()) log_.record(arrival, "remote_access", id, kv("target", target));
      const Token value = check.value;
      submit_bank(target, {core, id, parts.set_index}, [=, this](Cycle start) {
        const Cycle ready = start + config_.t_data;
        queue_.schedule(ready, [=, this] {
          submit_send(reverse_net(cl), {dst, src, sizes_.sector}, [=, this](Cycle delivered) {
            queue_.schedule(delivered, [=, this] {
              fill(cache, line, sector, value, FillSource::Remote, target, delivered);
            });
          });
        });
      });
    });
  });
}

void MemorySystem::start_probes(std::uint32_t cache, std::uint64_t line, std::uint32_t sector,
                                RequestId id, Cycle now) {
  const std::uint32_t cl = config_.cluster_of(cache);
  const std::uint32_t src = config_.index_in_cluster(cache);
  if (config_.cores_per_cluster == 1) {
    depart_l2(cache, line, sector, id, now);
    return;
  }
  probes_[id] = ProbeState{config_.cores_per_cluster - 1, false, 0, 0};
  for (std::uint32_t j = 0; j < config_.cores_per_cluster; ++j) {
    if (j == src) continue;
    const std::uint32_t peer = global_cache(cl, j);
    ++probe_messages_;
    if (log_.enabled()) log_.record(now, "probe", id, kv("target", peer));
    submit_send(forward_net(cl), {src, j, sizes_.request},
                [this, cache, peer, line, sector, id](Cycle arrival) {
      queue_.schedule(arrival, [this, cache, peer, line, sector, id] {
        const AddressParts parts = parts_of(line, sector);
        submit_probe_bank(peer, {records_[id].request.core_id, id, parts.set_index},
                          [this, cache, peer, line, sector, id](Cycle start) {
          queue_.schedule(start, [this, cache, peer, line, sector, id, start] {
            probe_at(cache, peer, line, sector, id, start);
          });
        });
      });
    });
  }
}

void MemorySystem::probe_at(std::uint32_t cache, std::uint32_t peer, std::uint64_t line,
                            std::uint32_t sector, RequestId id, Cycle now) {
  const std::uint32_t cl = config_.cluster_of(cache);
  const std::uint32_t src = config_.index_in_cluster(peer);
  const std::uint32_t dst = config_.index_in_cluster(cache);
  const AddressParts parts = parts_of(line, sector);
  const TagEntry* e = tags_[peer].find(parts);
  const bool hit = e != nullptr && e->sector_is_valid(sector);
  const CoreId core = records_[id].request.core_id;
  auto respond = [=, this](std::uint32_t bytes, bool h, Token value) {
    submit_send(reverse_net(cl), {src, dst, bytes}, [=, this](Cycle delivered) {
      queue_.schedule(delivered, [=, this] {
        probe_response(cache, peer, line, sector, id, h, value, delivered);
      });
    });
  };
  if (!hit) {
    queue_.schedule(now + 1, [=, this] { respond(sizes_.request, false, 0); });
    return;
  }
  tags_[peer].touch(parts);
  const Token value = data_[peer].read(line, sector);
  queue_.schedule(now + 1, [=, this] {
    submit_bank(peer, {core, id, parts.set_index}, [=, this](Cycle start) {
      queue_.schedule(start + config_.t_data, [=, this] { respond(sizes_.sector, true, value); });
    });
  });
}

void MemorySystem::probe_response(std::uint32_t cache, std::uint32_t peer, std::uint64_t line,
                                  std::uint32_t sector, RequestId id, bool hit, Token value,
                                  Cycle now) {
  auto it = probes_.find(id);
  if (it == probes_.end()) throw std::logic_error("probe response without probe state");
  ProbeState& st = it->second;
  if (log_.enabled()) log_.record(now, "probe_resp", id, kv("from", peer) + " hit=" + (hit ? "1" : "0"));
  if (hit && (!st.found || peer < st.best)) {
    st.found = true;
    st.best = peer;
    st.value = value;
  }
  if (--st.remaining > 0) return;
  const ProbeState done = st;
  probes_.erase(it);
  if (done.found) {
    fill(cache, line, sector, done.value, FillSource::Remote, done.best, now);
  } else {
    depart_l2(cache, line, sector, id, now);
  }
}

// ---------------------------------------------------------------------------------------
// Fills, write-backs, completion

void MemorySystem::fill(std::uint32_t cache, std::uint64_t line, std::uint32_t sector,
                        Token value, FillSource source, std::uint32_t supplier, Cycle now) {
  Mshr::Completion done = mshr_[cache].complete(line, sector);
  Token current = value;
  bool any_store = false;
  for (RequestId w : done.waiters) {
    RequestRecord& r = rec(w);
    if (r.request.kind == AccessKind::Store) {
      current = r.request.store_token();
      any_store = true;
    }
    r.outcome = source == FillSource::Remote ? L1Outcome::RemoteHit : L1Outcome::Miss;
    r.value = current;
    r.served_by = supplier;
    if (r.merged && source == FillSource::L2) mark_l1_done(w, r.tag_done, now);
  }
  const AddressParts parts = parts_of(line, sector);
  if (tags_[cache].complete_fill(parts, sector, any_store)) {
    data_[cache].write(line, sector, current);
  } else if (any_store) {
    std::vector<Token> tokens(config_.l1_geometry.sectors_per_line(), 0);
    tokens[sector] = current;
    const RequestId first = done.waiters.front();
    writeback(cache, line, std::move(tokens), std::uint64_t{1} << sector,
              records_[first].request.core_id, first, now);
  }
  if (log_.enabled()) log_.record(now, "fill", done.waiters.front(),
              kv("cache", cache) + " source=" + (source == FillSource::Remote ? "remote" : "l2") +
                  " " + kv("waiters", done.waiters.size()));
  if (done.entry_released) schedule_drain(cache, now);

  const RequestId first = done.waiters.front();
  std::vector<RequestId> waiters = std::move(done.waiters);
  submit_bank(cache, {records_[first].request.core_id, first, parts.set_index},
              [this, cache, waiters = std::move(waiters)](Cycle start) {
                for (RequestId w : waiters) served(w, cache, start + config_.t_data);
              });
}

void MemorySystem::writeback(std::uint32_t cache, std::uint64_t line, std::vector<Token> tokens,
                             std::uint64_t mask, CoreId core, RequestId cause, Cycle now) {
  const std::uint32_t p = partition_of(line, config_.l2_partitions);
  if (log_.enabled()) log_.record(now, "writeback", cause, kv("cache", cache) + " " + kv("line", line));
  const std::uint64_t bytes =
      std::uint64_t(std::popcount(mask)) * config_.l1_geometry.sector_size;
  submit_send(kL2Request, {cache, p, bytes},
              [this, p, line, tokens = std::move(tokens), mask, core, cause](Cycle arrival) {
    queue_.schedule(arrival, [this, p, line, tokens, mask, core, cause, arrival] {
      submit_l2(p, core, cause, [this, p, line, tokens, mask, cause, arrival](Cycle) {
        const Cycle start = l2_[p].writeback(line, tokens, mask, arrival);
        if (log_.enabled()) log_.record(start, "l2_writeback", cause, kv("partition", p) + " " + kv("line", line));
      });
    });
  });
}

void MemorySystem::served(RequestId id, std::uint32_t cache, Cycle ready) {
  if (!pipeline_.noc_to_l1) {
    queue_.schedule(ready, [this, id, ready] { complete(id, ready); });
    return;
  }
  const CoreId core = records_[id].request.core_id;
  const std::uint32_t cl = config_.cluster_of(core);
  const std::uint64_t bytes =
      records_[id].request.kind == AccessKind::Load ? sizes_.sector : sizes_.request;
  queue_.schedule(ready, [this, id, cache, core, cl, bytes] {
    submit_send(reverse_net(cl),
                {config_.index_in_cluster(cache), config_.index_in_cluster(core), bytes},
                [this, id](Cycle delivered) {
                  queue_.schedule(delivered, [this, id, delivered] { complete(id, delivered); });
                });
  });
}

void MemorySystem::mark_l1_done(RequestId id, Cycle at, Cycle now) {
  RequestRecord& r = rec(id);
  if (r.l1_done) return;
  r.l1_done = at;
  if (log_.enabled()) log_.record(now, "l1_stage", id, kv("at", at));
}

void MemorySystem::complete(RequestId id, Cycle cycle) {
  RequestRecord& r = rec(id);
  r.request.completion_cycle = cycle;
  mark_l1_done(id, cycle, cycle);
  if (log_.enabled()) log_.record(cycle, "complete", id,
              std::string("outcome=") + to_string(r.outcome) + " " + kv("value", r.value));
  on_complete_(id, cycle);
}

void MemorySystem::schedule_drain(std::uint32_t cache, Cycle now) {
  if (stall_[cache].empty() || drain_pending_[cache]) return;
  drain_pending_[cache] = true;
  queue_.schedule(now + 1, [this, cache, at = now + 1] { drain(cache, at); });
}

void MemorySystem::drain(std::uint32_t cache, Cycle now) {
  drain_pending_[cache] = false;
  while (!stall_[cache].empty()) {
    const RequestId id = stall_[cache].front();
    if (lookup(id, cache, presence_for(id, cache), now, true) == LookupResult::Stalled) break;
    stall_[cache].pop_front();
  }
}

// ---------------------------------------------------------------------------------------

HardwareCounters MemorySystem::counters() const {
  HardwareCounters h;
  for (const auto& d : data_) h.bank_conflict_cycles += d.conflict_cycles();
  for (std::size_t x = 0; x < xbars_.size(); ++x) {
    h.noc_flits += xbars_[x].total_flits();
    if (x >= 2) h.intra_cluster_flits += xbars_[x].total_flits();
    h.noc_port_flits[xbars_[x].name()] = xbars_[x].port_flits();
  }
  h.probe_messages = probe_messages_;
  for (const auto& p : l2_) {
    h.l2_hits += p.hits();
    h.l2_misses += p.misses();
    h.l2_writebacks += p.writebacks();
    h.l2_partition_accesses.push_back(p.accesses());
    h.l2_partition_hits.push_back(p.hits());
  }
  for (const auto& m : mshr_) h.mshr_merges += m.merges();
  h.remote_redirects = remote_redirects_;
  return h;
}

}  // namespace atasim
