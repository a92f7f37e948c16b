#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "atasim/geometry.hpp"
#include "atasim/request.hpp"

namespace atasim {

struct LoggedEvent {
  Cycle cycle = 0;
  std::string type;
  RequestId request = 0;
  std::string detail;  // space-separated key=value pairs

  // cycle=<n> ev=<type> req=<id> [detail]
  std::string format() const;
};

// Optional event sink: streams lines to `out` and/or keeps them in memory.
class EventLog {
 public:
  EventLog() = default;
  explicit EventLog(std::ostream* out, bool keep = false) : out_(out), keep_(keep) {}

  static EventLog in_memory() { return EventLog(nullptr, true); }

  bool enabled() const { return out_ != nullptr || keep_; }
  void record(Cycle cycle, const char* type, RequestId request, std::string detail = {});

  const std::vector<LoggedEvent>& events() const { return events_; }

 private:
  std::ostream* out_ = nullptr;
  bool keep_ = false;
  std::vector<LoggedEvent> events_;
};

}  // namespace atasim
