#include "octopia/trace.hpp"

#include <ostream>

#include <json.hpp>

namespace octopia {

std::string to_json_line(const TraceEvent& e) {
  nlohmann::ordered_json j;
  j["t"] = e.time;
  j["event"] = e.event;
  j["broker"] = e.broker;
  j["detail"] = e.detail;
  return j.dump();
}

void JsonLinesTrace::record(const TraceEvent& e) {
  const auto line = to_json_line(e);
  std::lock_guard lock(mutex_);
  out_ << line << '\n';
}

}  // namespace octopia
