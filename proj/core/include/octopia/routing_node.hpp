#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "octopia/lst.hpp"
#include "octopia/messages.hpp"
#include "octopia/scot.hpp"
#include "octopia/trace.hpp"

namespace octopia {

struct Outgoing {
  Hop to;
  Message msg;
};
using Outbox = std::vector<Outgoing>;

struct NodeCounters {
  std::uint64_t duplicate_adverts = 0;
  std::uint64_t duplicate_subs = 0;
  std::uint64_t dedup_suppressed = 0;       // notification copies skipped by per-link dedup
  std::uint64_t dropped_notifications = 0;  // arrived, nothing to forward or deliver
  std::uint64_t forced_congested_sends = 0;
  std::uint64_t unknown_references = 0;     // CIB_SET/CLEAR or tid for an unknown advertisement
  std::uint64_t hop_limit_drops = 0;
};

/// A broker as seen by the simulator: consumes one message, appends what it
/// sends. Implementations are single-owner state machines.
class RoutingNode {
 public:
  RoutingNode(const ScotTopology& topo, BrokerIndex self, SimTime window);
  virtual ~RoutingNode() = default;

  RoutingNode(const RoutingNode&) = delete;
  RoutingNode& operator=(const RoutingNode&) = delete;

  virtual void receive(const Hop& from, const Message& msg, SimTime now, Outbox& out) = 0;

  virtual std::size_t srt_size() const = 0;
  virtual std::size_t prt_size() const = 0;
  virtual bool stores_advertisement(const AdvId& id) const = 0;
  virtual bool stores_subscription(const SubId& id) const = 0;

  BrokerIndex index() const { return self_; }
  const BrokerId& id() const { return topo_.id(self_); }
  const ScotTopology& topology() const { return topo_; }

  LinkStatusTable& lst() { return lst_; }
  const LinkStatusTable& lst() const { return lst_; }
  const NodeCounters& counters() const { return counters_; }

  void set_trace(TraceSink* sink) { trace_ = sink; }

 protected:
  bool tracing(int level) const { return trace_ != nullptr && trace_->wants(level); }
  void trace(int level, SimTime now, std::string_view event, std::string detail) const;
  std::string hop_name(const Hop& h) const;

  /// Loop tripwire on notification hop counts.
  std::uint32_t hop_limit() const { return static_cast<std::uint32_t>(2 * topo_.broker_count()); }

  const ScotTopology& topo_;
  BrokerIndex self_;
  LinkStatusTable lst_;
  NodeCounters counters_;
  TraceSink* trace_ = nullptr;
};

}  // namespace octopia
