#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "atasim/config.hpp"
#include "atasim/memory_system.hpp"
#include "atasim/request_record.hpp"

namespace atasim {

// Latency histogram buckets: every value 0..255 is its own bucket, larger values fall in
// power-of-two buckets [2^k, 2^(k+1)) keyed by 2^k, with everything from 65536 up in the
// last one.
std::uint64_t latency_bucket(std::uint64_t latency);

struct SimReport {
  std::string architecture;
  std::uint64_t trace_digest = 0;
  std::uint64_t total_cycles = 0;
  std::uint64_t requests = 0;
  std::uint64_t loads = 0;
  std::uint64_t stores = 0;
  std::uint64_t l1_local_hits = 0;
  std::uint64_t l1_remote_hits = 0;
  std::uint64_t l1_misses = 0;
  std::uint64_t l1_mshr_merges = 0;
  std::uint64_t l1_remote_redirects = 0;
  std::uint64_t store_hits = 0;
  std::uint64_t l2_hits = 0;
  std::uint64_t l2_misses = 0;
  std::uint64_t l2_writebacks = 0;
  std::uint64_t bank_conflict_cycles = 0;
  std::uint64_t noc_flits = 0;
  std::uint64_t intra_cluster_flits = 0;
  std::uint64_t probe_messages = 0;
  std::uint64_t load_instructions = 0;
  std::uint64_t instruction_latency_sum = 0;
  std::map<std::uint64_t, std::uint64_t> instruction_latency_histogram;
  std::vector<std::uint64_t> l2_partition_accesses;
  std::vector<std::uint64_t> l2_partition_hits;
  std::map<std::string, std::vector<std::uint64_t>> noc_port_flits;

  double l1_hit_rate() const;
  double throughput() const;
  double mean_instruction_latency() const;
  bool operator==(const SimReport&) const = default;
};

SimReport build_report(const SimConfig& config, std::uint64_t trace_digest, Cycle total_cycles,
                       std::span<const RequestRecord> records, const HardwareCounters& counters);

// Per load instruction: max over its requests of (L1-stage completion - issue).
std::map<std::uint64_t, Cycle> instruction_l1_latencies(std::span<const RequestRecord> records);
// Throws std::out_of_range for an instruction id that has no load request.
Cycle instruction_l1_latency(std::span<const RequestRecord> records, std::uint64_t instruction_id);

// baseline.total_cycles / report.total_cycles per architecture. Throws std::invalid_argument
// when the baseline is missing or trace digests differ.
std::map<std::string, double> normalize(const std::map<std::string, SimReport>& reports,
                                        const std::string& baseline = "private");

// Fixed column order shared by all CSV output.
const std::vector<std::string>& csv_columns();
std::vector<std::string> csv_row(const SimReport& report, double normalized);

std::string to_json(const SimReport& report, int indent = 2);
SimReport report_from_json(const std::string& text);

struct Comparison {
  std::vector<SimReport> reports;  // baseline first
  std::map<std::string, double> normalized;
};
std::string comparison_to_json(const Comparison& comparison);
std::string comparison_to_csv(const Comparison& comparison);
std::string report_to_csv(const SimReport& report);

// 6-decimal fixed point.
std::string fixed6(double value);

}  // namespace atasim
