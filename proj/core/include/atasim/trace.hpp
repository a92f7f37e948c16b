#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "atasim/config.hpp"
#include "atasim/request.hpp"

namespace atasim {

// One line of a trace file: `cycle core L|S 0xaddress instruction_id`.
struct TraceRecord {
  Cycle cycle = 0;
  CoreId core_id = 0;
  AccessKind kind = AccessKind::Load;
  Address address = 0;
  std::uint64_t instruction_id = 0;
  bool operator==(const TraceRecord&) const = default;
};

class TraceError : public std::runtime_error {
 public:
  TraceError(std::string source, std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Blank lines and `#` comments are skipped. Per-core cycles must not decrease.
std::vector<TraceRecord> parse_trace(std::istream& in, std::string_view source = "<input>");
std::vector<TraceRecord> parse_trace(std::string_view text);

// Reads a trace file; names ending in `.gz` are decompressed.
std::vector<TraceRecord> load_trace(const std::string& path);

void write_trace(std::ostream& out, std::span<const TraceRecord> records);
// Writes a trace file; names ending in `.gz` are compressed.
void save_trace(const std::string& path, std::span<const TraceRecord> records);

// FNV-1a over the record fields; identifies a trace in reports.
std::uint64_t trace_digest(std::span<const TraceRecord> records);

// Throws ConfigError when a record names a core outside the configuration.
void check_trace(std::span<const TraceRecord> records, const SimConfig& config);

}  // namespace atasim
