#include "atasim/report.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>

#include "json.hpp"

namespace atasim {

using nlohmann::ordered_json;

std::uint64_t latency_bucket(std::uint64_t latency) {
  if (latency < 256) return latency;
  if (latency >= 65536) return 65536;
  return std::bit_floor(latency);
}

double SimReport::l1_hit_rate() const {
  return loads == 0 ? 0.0 : static_cast<double>(l1_local_hits + l1_remote_hits) / loads;
}

double SimReport::throughput() const {
  return total_cycles == 0 ? 0.0 : static_cast<double>(requests) / total_cycles;
}

double SimReport::mean_instruction_latency() const {
  return load_instructions == 0 ? 0.0
                                : static_cast<double>(instruction_latency_sum) / load_instructions;
}

std::map<std::uint64_t, Cycle> instruction_l1_latencies(std::span<const RequestRecord> records) {
  std::map<std::uint64_t, Cycle> out;
  for (const auto& r : records) {
    if (r.request.kind != AccessKind::Load) continue;
    if (!r.l1_done) {
      throw std::logic_error("request " + std::to_string(r.request.request_id) +
                             " has not finished its L1 stage");
    }
    const Cycle latency = *r.l1_done - r.request.issue_cycle;
    auto [it, fresh] = out.try_emplace(r.request.instruction_id, latency);
    if (!fresh) it->second = std::max(it->second, latency);
  }
  return out;
}

Cycle instruction_l1_latency(std::span<const RequestRecord> records, std::uint64_t instruction_id) {
  std::optional<Cycle> latency;
  for (const auto& r : records) {
    if (r.request.kind != AccessKind::Load || r.request.instruction_id != instruction_id) continue;
    if (!r.l1_done) throw std::logic_error("instruction has a request still in its L1 stage");
    const Cycle l = *r.l1_done - r.request.issue_cycle;
    latency = latency ? std::max(*latency, l) : l;
  }
  if (!latency) {
    throw std::out_of_range("unknown load instruction " + std::to_string(instruction_id));
  }
  return *latency;
}

SimReport build_report(const SimConfig& config, std::uint64_t trace_digest, Cycle total_cycles,
                       std::span<const RequestRecord> records, const HardwareCounters& hw) {
  SimReport rep;
  rep.architecture = std::string(to_string(config.architecture));
  rep.trace_digest = trace_digest;
  rep.total_cycles = total_cycles;
  rep.requests = records.size();
  for (const auto& r : records) {
    if (r.request.kind == AccessKind::Store) {
      ++rep.stores;
      if (r.outcome == L1Outcome::LocalHit) ++rep.store_hits;
      continue;
    }
    ++rep.loads;
    switch (r.outcome) {
      case L1Outcome::LocalHit: ++rep.l1_local_hits; break;
      case L1Outcome::RemoteHit: ++rep.l1_remote_hits; break;
      case L1Outcome::Miss: ++rep.l1_misses; break;
      case L1Outcome::Pending: throw std::logic_error("report built before the run drained");
    }
  }
  for (const auto& [inst, latency] : instruction_l1_latencies(records)) {
    ++rep.load_instructions;
    rep.instruction_latency_sum += latency;
    ++rep.instruction_latency_histogram[latency_bucket(latency)];
  }
  rep.l1_mshr_merges = hw.mshr_merges;
  rep.l1_remote_redirects = hw.remote_redirects;
  rep.l2_hits = hw.l2_hits;
  rep.l2_misses = hw.l2_misses;
  rep.l2_writebacks = hw.l2_writebacks;
  rep.bank_conflict_cycles = hw.bank_conflict_cycles;
  rep.noc_flits = hw.noc_flits;
  rep.intra_cluster_flits = hw.intra_cluster_flits;
  rep.probe_messages = hw.probe_messages;
  rep.l2_partition_accesses = hw.l2_partition_accesses;
  rep.l2_partition_hits = hw.l2_partition_hits;
  rep.noc_port_flits = hw.noc_port_flits;
  return rep;
}

std::map<std::string, double> normalize(const std::map<std::string, SimReport>& reports,
                                        const std::string& baseline) {
  auto base = reports.find(baseline);
  if (base == reports.end()) throw std::invalid_argument("baseline " + baseline + " missing");
  std::map<std::string, double> out;
  for (const auto& [arch, rep] : reports) {
    if (rep.trace_digest != base->second.trace_digest) {
      throw std::invalid_argument("trace digest of " + arch + " differs from " + baseline);
    }
    if (rep.total_cycles == 0) {
      out[arch] = base->second.total_cycles == 0 ? 1.0 : 0.0;
    } else {
      out[arch] = static_cast<double>(base->second.total_cycles) / rep.total_cycles;
    }
  }
  return out;
}

std::string fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

namespace {

std::string hex(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

double round6(double v) { return std::round(v * 1e6) / 1e6; }

ordered_json report_json(const SimReport& r) {
  ordered_json j;
  j["architecture"] = r.architecture;
  j["trace_digest"] = hex(r.trace_digest);
  j["total_cycles"] = r.total_cycles;
  j["requests"] = r.requests;
  j["loads"] = r.loads;
  j["stores"] = r.stores;
  j["l1_local_hits"] = r.l1_local_hits;
  j["l1_remote_hits"] = r.l1_remote_hits;
  j["l1_misses"] = r.l1_misses;
  j["l1_mshr_merges"] = r.l1_mshr_merges;
  j["l1_remote_redirects"] = r.l1_remote_redirects;
  j["store_hits"] = r.store_hits;
  j["l2_hits"] = r.l2_hits;
  j["l2_misses"] = r.l2_misses;
  j["l2_writebacks"] = r.l2_writebacks;
  j["bank_conflict_cycles"] = r.bank_conflict_cycles;
  j["noc_flits"] = r.noc_flits;
  j["intra_cluster_flits"] = r.intra_cluster_flits;
  j["probe_messages"] = r.probe_messages;
  j["load_instructions"] = r.load_instructions;
  j["instruction_latency_sum"] = r.instruction_latency_sum;
  j["l1_hit_rate"] = round6(r.l1_hit_rate());
  j["throughput"] = round6(r.throughput());
  j["mean_instruction_latency"] = round6(r.mean_instruction_latency());
  ordered_json hist = ordered_json::array();
  for (const auto& [bucket, count] : r.instruction_latency_histogram) {
    hist.push_back({{"bucket", bucket}, {"count", count}});
  }
  j["instruction_latency_histogram"] = hist;
  j["l2_partition_accesses"] = r.l2_partition_accesses;
  j["l2_partition_hits"] = r.l2_partition_hits;
  ordered_json ports = ordered_json::object();
  for (const auto& [name, flits] : r.noc_port_flits) ports[name] = flits;
  j["noc_port_flits"] = ports;
  return j;
}

}  // namespace

std::string to_json(const SimReport& report, int indent) {
  return report_json(report).dump(indent) + "\n";
}

SimReport report_from_json(const std::string& text) {
  const ordered_json j = ordered_json::parse(text);
  SimReport r;
  j.at("architecture").get_to(r.architecture);
  r.trace_digest = std::stoull(j.at("trace_digest").get<std::string>(), nullptr, 16);
  j.at("total_cycles").get_to(r.total_cycles);
  j.at("requests").get_to(r.requests);
  j.at("loads").get_to(r.loads);
  j.at("stores").get_to(r.stores);
  j.at("l1_local_hits").get_to(r.l1_local_hits);
  j.at("l1_remote_hits").get_to(r.l1_remote_hits);
  j.at("l1_misses").get_to(r.l1_misses);
  j.at("l1_mshr_merges").get_to(r.l1_mshr_merges);
  j.at("l1_remote_redirects").get_to(r.l1_remote_redirects);
  j.at("store_hits").get_to(r.store_hits);
  j.at("l2_hits").get_to(r.l2_hits);
  j.at("l2_misses").get_to(r.l2_misses);
  j.at("l2_writebacks").get_to(r.l2_writebacks);
  j.at("bank_conflict_cycles").get_to(r.bank_conflict_cycles);
  j.at("noc_flits").get_to(r.noc_flits);
  j.at("intra_cluster_flits").get_to(r.intra_cluster_flits);
  j.at("probe_messages").get_to(r.probe_messages);
  j.at("load_instructions").get_to(r.load_instructions);
  j.at("instruction_latency_sum").get_to(r.instruction_latency_sum);
  for (const auto& b : j.at("instruction_latency_histogram")) {
    r.instruction_latency_histogram[b.at("bucket").get<std::uint64_t>()] =
        b.at("count").get<std::uint64_t>();
  }
  j.at("l2_partition_accesses").get_to(r.l2_partition_accesses);
  j.at("l2_partition_hits").get_to(r.l2_partition_hits);
  for (const auto& [name, flits] : j.at("noc_port_flits").items()) {
    r.noc_port_flits[name] = flits.get<std::vector<std::uint64_t>>();
  }
  return r;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> kColumns = {
      "architecture",       "trace_digest",     "total_cycles",     "normalized",
      "requests",           "loads",            "stores",           "l1_local_hits",
      "l1_remote_hits",     "l1_misses",        "l1_hit_rate",      "l1_mshr_merges",
      "l1_remote_redirects", "store_hits",      "l2_hits",          "l2_misses",
      "l2_writebacks",      "bank_conflict_cycles", "noc_flits",    "intra_cluster_flits",
      "probe_messages",     "load_instructions", "mean_instruction_latency", "throughput"};
  return kColumns;
}

std::vector<std::string> csv_row(const SimReport& r, double normalized) {
  auto n = [](std::uint64_t v) { return std::to_string(v); };
  return {r.architecture,         hex(r.trace_digest),       n(r.total_cycles),
          fixed6(normalized),     n(r.requests),             n(r.loads),
          n(r.stores),            n(r.l1_local_hits),        n(r.l1_remote_hits),
          n(r.l1_misses),         fixed6(r.l1_hit_rate()),   n(r.l1_mshr_merges),
          n(r.l1_remote_redirects), n(r.store_hits),         n(r.l2_hits),
          n(r.l2_misses),         n(r.l2_writebacks),        n(r.bank_conflict_cycles),
          n(r.noc_flits),         n(r.intra_cluster_flits),  n(r.probe_messages),
          n(r.load_instructions), fixed6(r.mean_instruction_latency()), fixed6(r.throughput())};
}

namespace {

void append_row(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
}

}  // namespace

std::string report_to_csv(const SimReport& report) {
  std::string out;
  append_row(out, csv_columns());
  append_row(out, csv_row(report, 1.0));
  return out;
}

std::string comparison_to_csv(const Comparison& c) {
  std::string out;
  append_row(out, csv_columns());
  for (const auto& r : c.reports) append_row(out, csv_row(r, c.normalized.at(r.architecture)));
  return out;
}

std::string comparison_to_json(const Comparison& c) {
  ordered_json j;
  j["baseline"] = c.reports.empty() ? "" : c.reports.front().architecture;
  ordered_json norm = ordered_json::object();
  for (const auto& r : c.reports) norm[r.architecture] = round6(c.normalized.at(r.architecture));
  j["normalized"] = norm;
  ordered_json reps = ordered_json::array();
  for (const auto& r : c.reports) reps.push_back(report_json(r));
  j["reports"] = reps;
  return j.dump(2) + "\n";
}

}  // namespace atasim
