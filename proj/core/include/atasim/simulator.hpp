#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "atasim/config.hpp"
#include "atasim/event_log.hpp"
#include "atasim/event_queue.hpp"
#include "atasim/memory_system.hpp"
#include "atasim/report.hpp"
#include "atasim/trace.hpp"

namespace atasim {

struct RunOptions {
  Cycle max_cycles = 100'000'000;
  EventLog* log = nullptr;
};

// Raised when the cycle ceiling is reached with work still pending.
class SimulationAborted : public std::runtime_error {
 public:
  SimulationAborted(Cycle cycle, const std::string& diagnostic);
  Cycle cycle() const { return cycle_; }

 private:
  Cycle cycle_;
};

// Trace-driven front end plus memory system. Each step() handles one active cycle: cores
// issue first (in core order, at most one request each), then events and same-cycle
// arbitration run until nothing is left for that cycle. A slot freed by a completion is
// usable from the next cycle on.
class Simulator {
 public:
  Simulator(const SimConfig& config, std::span<const TraceRecord> trace, RunOptions options = {});

  // Processes the next active cycle; returns the number of events run (issues included).
  std::size_t step();
  void run();
  bool finished() const;

  Cycle now() const { return now_; }
  // Completion cycle of the last request (0 for an empty trace).
  Cycle total_cycles() const { return last_completion_; }
  std::uint64_t completed() const { return completed_; }
  std::uint32_t outstanding(CoreId core) const { return cores_[core].outstanding; }

  const std::vector<RequestRecord>& records() const { return records_; }
  const MemorySystem& memory() const { return *memory_; }
  SimReport report() const;

 private:
  struct CoreFrontEnd {
    std::vector<RequestId> queue;  // request ids in trace order
    std::size_t cursor = 0;
    std::uint32_t outstanding = 0;
  };

  std::optional<Cycle> next_active(Cycle after) const;
  void on_complete(RequestId id, Cycle cycle);

  SimConfig config_;
  RunOptions options_;
  std::uint64_t digest_;
  EventLog null_log_;
  EventQueue queue_;
  std::vector<RequestRecord> records_;
  std::vector<CoreFrontEnd> cores_;
  std::unique_ptr<MemorySystem> memory_;
  Cycle now_ = 0;
  bool started_ = false;
  Cycle last_completion_ = 0;
  std::uint64_t issued_ = 0;
  std::uint64_t completed_ = 0;
};

// Runs `trace` to completion and reports. Throws ConfigError for an invalid config or a
// trace that does not fit it, SimulationAborted at the cycle ceiling.
SimReport simulate(const SimConfig& config, std::span<const TraceRecord> trace,
                   RunOptions options = {});

}  // namespace atasim
