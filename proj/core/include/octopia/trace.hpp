#pragma once

#include <iosfwd>
#include <mutex>
#include <string>
#include <vector>

#include "octopia/messages.hpp"

namespace octopia {

struct TraceEvent {
  SimTime time = 0;
  std::string event;   // "send", "deliver", "srt_store", "civ_update", ...
  std::string broker;  // "(a,0)" or empty for simulator-level events
  std::string detail;
};

/// Receives structured events. Level 1 = message sends and deliveries,
/// level 2 adds every table mutation.
class TraceSink {
 public:
  explicit TraceSink(int level) : level_(level) {}
  virtual ~TraceSink() = default;

  int level() const { return level_; }
  bool wants(int level) const { return level <= level_; }
  virtual void record(const TraceEvent& e) = 0;

 private:
  int level_;
};

class MemoryTrace : public TraceSink {
 public:
  explicit MemoryTrace(int level = 2) : TraceSink(level) {}
  void record(const TraceEvent& e) override { events.push_back(e); }

  std::vector<TraceEvent> events;
};

/// One JSON object per line: {"t":..,"event":..,"broker":..,"detail":..}.
class JsonLinesTrace : public TraceSink {
 public:
  JsonLinesTrace(std::ostream& out, int level) : TraceSink(level), out_(out) {}
  void record(const TraceEvent& e) override;

 private:
  std::ostream& out_;
  std::mutex mutex_;
};

std::string to_json_line(const TraceEvent& e);

}  // namespace octopia
