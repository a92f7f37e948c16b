#include "atasim/simulator.hpp"

#include <algorithm>
#include <string>

namespace atasim {

SimulationAborted::SimulationAborted(Cycle cycle, const std::string& diagnostic)
    : std::runtime_error("cycle ceiling " + std::to_string(cycle) + " reached: " + diagnostic),
      cycle_(cycle) {}

Simulator::Simulator(const SimConfig& config, std::span<const TraceRecord> trace,
                     RunOptions options)
    : config_(validate_config(config)), options_(options), digest_(trace_digest(trace)) {
  check_trace(trace, config_);
  records_.resize(trace.size());
  cores_.resize(config_.num_cores);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const TraceRecord& t = trace[i];
    RequestRecord& r = records_[i];
    r.request.request_id = i;
    r.request.core_id = t.core_id;
    r.request.address = t.address;
    r.request.kind = t.kind;
    r.request.instruction_id = t.instruction_id;
    r.trace_cycle = t.cycle;
    cores_[t.core_id].queue.push_back(i);
  }
  EventLog& log = options_.log != nullptr ? *options_.log : null_log_;
  memory_ = std::make_unique<MemorySystem>(
      config_, queue_, records_, log, [this](RequestId id, Cycle c) { on_complete(id, c); });
}

void Simulator::on_complete(RequestId id, Cycle cycle) {
  CoreFrontEnd& core = cores_[records_[id].request.core_id];
  if (core.outstanding == 0) throw std::logic_error("completion without outstanding request");
  --core.outstanding;
  ++completed_;
  last_completion_ = std::max(last_completion_, cycle);
}

std::optional<Cycle> Simulator::next_active(Cycle after) const {
  std::optional<Cycle> next = queue_.next_cycle();
  for (const auto& core : cores_) {
    if (core.cursor == core.queue.size()) continue;
    if (core.outstanding >= config_.max_outstanding_per_core) continue;
    const Cycle c = std::max(after, records_[core.queue[core.cursor]].trace_cycle);
    if (!next || c < *next) next = c;
  }
  return next;
}

bool Simulator::finished() const {
  return completed_ == records_.size() && queue_.empty() && memory_->quiescent();
}

std::size_t Simulator::step() {
  if (finished()) return 0;
  const std::optional<Cycle> next = next_active(started_ ? now_ + 1 : 0);
  if (!next) throw std::logic_error("simulation stalled with requests outstanding");
  if (*next > options_.max_cycles) {
    std::string diag = std::to_string(records_.size() - completed_) + " requests unfinished";
    for (std::uint32_t c = 0; c < cores_.size(); ++c) {
      if (cores_[c].outstanding > 0) {
        diag += ", core " + std::to_string(c) + " outstanding " +
                std::to_string(cores_[c].outstanding);
      }
    }
    throw SimulationAborted(options_.max_cycles, diag);
  }
  now_ = *next;
  started_ = true;
  queue_.advance_to(now_);

  std::size_t processed = 0;
  for (auto& core : cores_) {
    if (core.cursor == core.queue.size()) continue;
    if (core.outstanding >= config_.max_outstanding_per_core) continue;
    const RequestId id = core.queue[core.cursor];
    if (records_[id].trace_cycle > now_) continue;
    ++core.cursor;
    ++core.outstanding;
    ++issued_;
    ++processed;
    memory_->issue(id, now_);
  }
  for (;;) {
    const std::size_t ran = queue_.run_current();
    processed += ran;
    const bool flushed = memory_->flush(now_);
    if (ran == 0 && !flushed) break;
  }
  for (const auto& core : cores_) {
    if (core.outstanding > config_.max_outstanding_per_core) {
      throw std::logic_error("outstanding bound exceeded");
    }
  }
  return processed;
}

void Simulator::run() {
  while (!finished()) step();
  if (issued_ != records_.size() || completed_ != issued_) {
    throw std::logic_error("request conservation violated");
  }
}

SimReport Simulator::report() const {
  return build_report(config_, digest_, last_completion_, records_, memory_->counters());
}

SimReport simulate(const SimConfig& config, std::span<const TraceRecord> trace,
                   RunOptions options) {
  Simulator sim(config, trace, options);
  sim.run();
  return sim.report();
}

}  // namespace atasim
