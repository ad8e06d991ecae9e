#include "octopia/lst.hpp"

#include <stdexcept>

namespace octopia {

double congestion_element(const LstEntry& e) {
  return (1.0 + static_cast<double>(e.q_in)) / (1.0 + static_cast<double>(e.q_out));
}

bool is_congested(const LstEntry& e, double tau) {
  return static_cast<double>(e.q_len) * congestion_element(e) > tau;
}

SimTime LinkStatusTable::window_start(SimTime now) const {
  if (window_ <= 0) throw std::logic_error("LST window must be positive");
  return now - now % window_;
}

LstEntry& LinkStatusTable::touch(BrokerIndex to, SimTime now) {
  auto& e = entries_[to];
  const auto start = window_start(now);
  if (start != e.window_start) {
    e.q_in = 0;
    e.q_out = 0;
    e.window_start = start;
  }
  return e;
}

void LinkStatusTable::on_enqueue(BrokerIndex to, SimTime now) {
  auto& e = touch(to, now);
  ++e.q_in;
  ++e.q_len;
}

void LinkStatusTable::on_dequeue(BrokerIndex to, SimTime now) {
  auto& e = touch(to, now);
  if (e.q_len == 0) throw std::logic_error("dequeue from an empty output queue");
  ++e.q_out;
  --e.q_len;
}

LstEntry LinkStatusTable::entry(BrokerIndex to, SimTime now) const {
  const auto it = entries_.find(to);
  LstEntry e = it == entries_.end() ? LstEntry{} : it->second;
  const auto start = window_start(now);
  if (start != e.window_start) {
    e.q_in = 0;
    e.q_out = 0;
    e.window_start = start;
  }
  return e;
}

bool LinkStatusTable::congested(BrokerIndex to, SimTime now, double tau) const {
  return is_congested(entry(to, now), tau);
}

std::uint64_t LinkStatusTable::q_len(BrokerIndex to) const {
  const auto it = entries_.find(to);
  return it == entries_.end() ? 0 : it->second.q_len;
}

}  // namespace octopia
