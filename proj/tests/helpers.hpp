#pragma once

#include <unistd.h>

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "atasim/simulator.hpp"
#include "atasim/trace.hpp"

namespace testing_support {

using namespace atasim;

inline TraceRecord load(Cycle cycle, CoreId core, Address addr, std::uint64_t inst) {
  return {cycle, core, AccessKind::Load, addr, inst};
}

inline TraceRecord store(Cycle cycle, CoreId core, Address addr, std::uint64_t inst) {
  return {cycle, core, AccessKind::Store, addr, inst};
}

inline SimConfig small_config(Architecture arch, std::uint32_t cores = 2,
                              std::uint32_t per_cluster = 2) {
  SimConfig c;
  c.num_cores = cores;
  c.cores_per_cluster = per_cluster;
  c.architecture = arch;
  return c;
}

struct Run {
  std::vector<RequestRecord> records;
  std::vector<std::string> log;
  SimReport report;
};

inline Run run_logged(const SimConfig& config, const std::vector<TraceRecord>& trace) {
  EventLog log = EventLog::in_memory();
  Simulator sim(config, trace, {100'000'000, &log});
  sim.run();
  Run r{sim.records(), {}, sim.report()};
  for (const auto& e : log.events()) r.log.push_back(e.format());
  return r;
}

// Trace where every line is owned by one core (only it loads and stores there) or is
// shared and never written. Addresses are sector aligned.
inline std::vector<TraceRecord> single_writer_trace(std::uint64_t seed, std::uint32_t cores,
                                                    std::size_t requests,
                                                    std::uint64_t owned_lines_per_core,
                                                    std::uint64_t shared_lines) {
  std::uint64_t s = seed * 0x9E3779B97F4A7C15ull + 1;
  auto next = [&s] {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  };
  std::vector<Cycle> cycle(cores, 0);
  std::vector<TraceRecord> out;
  for (std::size_t i = 0; i < requests; ++i) {
    const CoreId c = static_cast<CoreId>(next() % cores);
    cycle[c] += next() % 3;
    const std::uint64_t sector = next() % 4;
    TraceRecord r;
    r.cycle = cycle[c];
    r.core_id = c;
    r.instruction_id = i;
    if (next() % 100 < 40) {
      const std::uint64_t line = next() % shared_lines;
      r.address = 0x10000000 + line * 128 + sector * 32;
      r.kind = AccessKind::Load;
    } else {
      // Owned lines of different cores interleave in the same sets.
      const std::uint64_t line = (next() % owned_lines_per_core) * cores + c;
      r.address = 0x40000000 + line * 128 + sector * 32;
      r.kind = next() % 100 < 35 ? AccessKind::Store : AccessKind::Load;
    }
    out.push_back(r);
  }
  return out;
}

inline std::filesystem::path temp_path(const std::string& name) {
  static std::atomic<int> counter{0};
  auto dir = std::filesystem::temp_directory_path() /
             ("atasim_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  std::filesystem::create_directories(dir);
  return dir / name;
}

inline bool has_event(const std::vector<std::string>& log, const std::string& needle) {
  for (const auto& l : log) {
    if (l.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace testing_support
