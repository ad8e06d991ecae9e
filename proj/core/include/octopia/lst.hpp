#pragma once

#include <cstdint>
#include <map>

#include "octopia/messages.hpp"

namespace octopia {

/// Counters of one output queue. q_in/q_out count arrivals/departures in
/// the current tumbling window; q_len is the live length (including the
/// message being transmitted).
struct LstEntry {
  std::uint64_t q_in = 0;
  std::uint64_t q_out = 0;
  std::uint64_t q_len = 0;
  SimTime window_start = 0;
};

/// (1 + Q_in) / (1 + Q_out)
double congestion_element(const LstEntry& e);

/// Q_len * CE > tau, strictly.
bool is_congested(const LstEntry& e, double tau);

/// Per-neighbour output-queue status of one broker. Windows roll lazily:
/// any access at time `now` first resets counters if a window boundary
/// has passed since the entry was last touched.
class LinkStatusTable {
 public:
  LinkStatusTable() = default;
  explicit LinkStatusTable(SimTime window) : window_(window) {}

  SimTime window() const { return window_; }

  void on_enqueue(BrokerIndex to, SimTime now);
  void on_dequeue(BrokerIndex to, SimTime now);

  /// Entry for `to` as seen at `now` (a default entry if never used).
  LstEntry entry(BrokerIndex to, SimTime now) const;
  bool congested(BrokerIndex to, SimTime now, double tau) const;
  std::uint64_t q_len(BrokerIndex to) const;

  const std::map<BrokerIndex, LstEntry>& raw() const { return entries_; }

 private:
  SimTime window_start(SimTime now) const;
  LstEntry& touch(BrokerIndex to, SimTime now);

  SimTime window_ = 50 * kMillisecond;
  std::map<BrokerIndex, LstEntry> entries_;
};

}  // namespace octopia
