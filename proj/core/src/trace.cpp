#include "atasim/trace.hpp"

#include <zlib.h>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace atasim {

namespace {

std::string describe(std::string_view source, std::size_t line, const std::string& message) {
  return std::string(source) + ":" + std::to_string(line) + ": " + message;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

template <typename T>
bool parse_number(std::string_view field, T& out, int base = 10) {
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, out, base);
  return ec == std::errc() && ptr == end;
}

std::string read_gzip(const std::string& path) {
  gzFile f = gzopen(path.c_str(), "rb");
  if (f == nullptr) throw std::runtime_error("cannot open trace " + path);
  std::string out;
  char buf[1 << 16];
  int n;
  while ((n = gzread(f, buf, sizeof buf)) > 0) out.append(buf, static_cast<std::size_t>(n));
  const bool failed = n < 0;
  gzclose(f);
  if (failed) throw std::runtime_error("corrupt gzip stream in " + path);
  return out;
}

}  // namespace

TraceError::TraceError(std::string source, std::size_t line, const std::string& message)
    : std::runtime_error(describe(source, line, message)), line_(line) {}

std::vector<TraceRecord> parse_trace(std::istream& in, std::string_view source) {
  std::vector<TraceRecord> out;
  std::map<CoreId, Cycle> last_cycle;
  std::string text;
  std::size_t lineno = 0;
  while (std::getline(in, text)) {
    ++lineno;
    if (auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
    std::istringstream fields(text);
    std::vector<std::string> f;
    for (std::string tok; fields >> tok;) f.push_back(tok);
    if (f.empty()) continue;
    if (f.size() != 5) {
      throw TraceError(std::string(source), lineno,
                       "expected 5 fields, got " + std::to_string(f.size()));
    }
    TraceRecord r;
    if (!parse_number(f[0], r.cycle)) throw TraceError(std::string(source), lineno, "bad cycle " + f[0]);
    if (!parse_number(f[1], r.core_id)) throw TraceError(std::string(source), lineno, "bad core " + f[1]);
    if (f[2] == "L") {
      r.kind = AccessKind::Load;
    } else if (f[2] == "S") {
      r.kind = AccessKind::Store;
    } else {
      throw TraceError(std::string(source), lineno, "unknown kind " + f[2]);
    }
    std::string_view addr = f[3];
    if (addr.size() > 2 && addr[0] == '0' && (addr[1] == 'x' || addr[1] == 'X')) {
      addr.remove_prefix(2);
    } else {
      throw TraceError(std::string(source), lineno, "bad address " + f[3]);
    }
    if (!parse_number(addr, r.address, 16)) {
      throw TraceError(std::string(source), lineno, "bad address " + f[3]);
    }
    if (!parse_number(f[4], r.instruction_id)) {
      throw TraceError(std::string(source), lineno, "bad instruction id " + f[4]);
    }
    auto [it, fresh] = last_cycle.try_emplace(r.core_id, r.cycle);
    if (!fresh) {
      if (r.cycle < it->second) {
        throw TraceError(std::string(source), lineno,
                         "cycle " + f[0] + " decreases for core " + f[1]);
      }
      it->second = r.cycle;
    }
    out.push_back(r);
  }
  return out;
}

std::vector<TraceRecord> parse_trace(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_trace(in);
}

std::vector<TraceRecord> load_trace(const std::string& path) {
  if (ends_with(path, ".gz")) {
    std::istringstream in(read_gzip(path));
    return parse_trace(in, path);
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace " + path);
  return parse_trace(in, path);
}

void write_trace(std::ostream& out, std::span<const TraceRecord> records) {
  char buf[96];
  for (const auto& r : records) {
    const int n = std::snprintf(buf, sizeof buf, "%llu %u %c 0x%llx %llu\n",
                                static_cast<unsigned long long>(r.cycle), r.core_id,
                                r.kind == AccessKind::Load ? 'L' : 'S',
                                static_cast<unsigned long long>(r.address),
                                static_cast<unsigned long long>(r.instruction_id));
    out.write(buf, n);
  }
}

void save_trace(const std::string& path, std::span<const TraceRecord> records) {
  std::ostringstream text;
  write_trace(text, records);
  const std::string data = text.str();
  if (ends_with(path, ".gz")) {
    gzFile f = gzopen(path.c_str(), "wb");
    if (f == nullptr) throw std::runtime_error("cannot write trace " + path);
    const int written = data.empty() ? 0 : gzwrite(f, data.data(), static_cast<unsigned>(data.size()));
    gzclose(f);
    if (!data.empty() && written <= 0) throw std::runtime_error("cannot write trace " + path);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write trace " + path);
  out << data;
  if (!out) throw std::runtime_error("cannot write trace " + path);
}

std::uint64_t trace_digest(std::span<const TraceRecord> records) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(records.size());
  for (const auto& r : records) {
    mix(r.cycle);
    mix(r.core_id);
    mix(static_cast<std::uint64_t>(r.kind));
    mix(r.address);
    mix(r.instruction_id);
  }
  return h;
}

void check_trace(std::span<const TraceRecord> records, const SimConfig& config) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].core_id >= config.num_cores) {
      throw ConfigError({"trace record " + std::to_string(i) + " uses core " +
                         std::to_string(records[i].core_id) + " but num_cores = " +
                         std::to_string(config.num_cores)});
    }
  }
}

}  // namespace atasim
