#include "atasim/event_log.hpp"

#include <ostream>

namespace atasim {

std::string LoggedEvent::format() const {
  std::string line = "cycle=" + std::to_string(cycle) + " ev=" + type +
                     " req=" + std::to_string(request);
  if (!detail.empty()) line += " " + detail;
  return line;
}

void EventLog::record(Cycle cycle, const char* type, RequestId request, std::string detail) {
  if (!enabled()) return;
  LoggedEvent ev{cycle, type, request, std::move(detail)};
  if (out_ != nullptr) *out_ << ev.format() << '\n';
  if (keep_) events_.push_back(std::move(ev));
}

}  // namespace atasim
