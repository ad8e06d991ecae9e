#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "octopia/broker.hpp"
#include "octopia/metrics.hpp"
#include "octopia/routing_node.hpp"
#include "octopia/scot.hpp"
#include "octopia/tid_broker.hpp"

namespace octopia {

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rates are messages per simulated millisecond.
struct LinkModel {
  SimTime latency = kMillisecond;
  double alink_rate = 10.0;
  double ilink_rate = 10.0;
};

/// Degrades one link direction for [start, end) and optionally stuffs its
/// output queue with `backlog` background messages at `start`.
struct CongestionInjection {
  BrokerIndex from = 0;
  BrokerIndex to = 0;
  SimTime start = 0;
  SimTime end = 0;
  double degraded_rate = 0.01;
  std::size_t backlog = 0;
};

struct SimConfig {
  BrokerParams broker;
  LinkModel links;
  std::uint64_t event_budget = 20'000'000;
  std::vector<BrokerIndex> watched;  // brokers whose queues are sampled per window
};

struct ClientInfo {
  std::string name;
  BrokerIndex host = 0;
  std::uint32_t next_seq = 1;
};

/// Deterministic discrete-event simulator. Events run in (time, seq) order;
/// each link direction is a FIFO served one message per 1/rate, followed by
/// the propagation latency.
class Simulator {
 public:
  Simulator(const ScotTopology& topo, SimConfig config);
  ~Simulator();

  Simulator(const Simulator&) = delete;
  Simulator& operator=(const Simulator&) = delete;

  const ScotTopology& topology() const { return topo_; }
  const SimConfig& config() const { return config_; }
  SimTime now() const { return now_; }

  ClientId add_client(std::string name, BrokerIndex host);
  const ClientInfo& client(ClientId id) const { return clients_.at(id); }
  std::size_t client_count() const { return clients_.size(); }

  // Client actions take effect at `at` (>= now()).
  AdvId advertise(ClientId publisher, Filter filter, SimTime at);
  SubId subscribe(ClientId subscriber, Filter filter, SimTime at);
  void unsubscribe(ClientId subscriber, SubId id, SimTime at);
  NotifId publish(ClientId publisher, AdvId adv, Payload payload, SimTime at);

  /// Throws SimulationError for a non-link or an invalid window/rate.
  void inject(const CongestionInjection& c);

  /// Runs until no events remain. Throws SimulationError when the event
  /// budget is exhausted (loop tripwire).
  SimTime run();

  RoutingNode& node(BrokerIndex b) { return *nodes_.at(b); }
  const RoutingNode& node(BrokerIndex b) const { return *nodes_.at(b); }
  /// nullptr in the TID baseline.
  const Broker* broker(BrokerIndex b) const;
  const TidBroker* tid_broker(BrokerIndex b) const;

  /// Live output-queue length of one direction.
  std::size_t queue_length(BrokerIndex from, BrokerIndex to) const;

  void set_trace(TraceSink* sink);

  /// Snapshot of the metrics so far (tables and counters read from brokers).
  MetricsReport report() const;

  // Every advertisement and subscription issued, for oracles.
  const std::map<AdvId, Advertisement>& advertisements() const { return adverts_; }
  const std::map<SubId, Subscription>& subscriptions() const { return subs_; }
  const std::map<NotifId, Notification>& published() const { return published_; }

 private:
  struct Link {
    BrokerIndex from = 0;
    BrokerIndex to = 0;
    double nominal_rate = 1;
    double rate = 1;
    SimTime latency = 0;
    std::deque<Message> queue;
    bool busy = false;
  };

  enum class EventKind { Arrival, Departure, ClientAction, DegradeStart, DegradeEnd };

  struct Event {
    SimTime time = 0;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::Arrival;
    std::size_t link = 0;    // Arrival, Departure, Degrade*
    ClientId client = 0;     // ClientAction
    std::size_t injection = 0;
    Message msg;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };

  void schedule(Event e);
  std::size_t link_index(BrokerIndex from, BrokerIndex to) const;
  void enqueue(std::size_t link, Message msg);
  void start_service(std::size_t link);
  void dispatch(BrokerIndex at, const Outbox& out);
  void check_mirror(const Link& l);
  void sample_queue(const Link& l);

  const ScotTopology& topo_;
  SimConfig config_;
  std::vector<std::unique_ptr<RoutingNode>> nodes_;
  std::vector<Link> links_;
  std::map<std::pair<BrokerIndex, BrokerIndex>, std::size_t> link_ids_;
  std::vector<ClientInfo> clients_;
  std::vector<CongestionInjection> injections_;
  std::vector<bool> watched_;
  std::priority_queue<Event, std::vector<Event>, Later> events_;
  std::uint64_t next_seq_ = 0;
  SimTime now_ = 0;
  std::uint64_t on_wire_ = 0;
  std::map<AdvId, Advertisement> adverts_;
  std::map<SubId, Subscription> subs_;
  std::map<NotifId, Notification> published_;
  std::map<std::tuple<SimTime, BrokerIndex, BrokerIndex>, std::uint64_t> window_max_;
  MetricsReport metrics_;
  TraceSink* trace_ = nullptr;
};

}  // namespace octopia
