#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "octopia/messages.hpp"
#include "octopia/routing_node.hpp"

namespace octopia {

struct Delivery {
  NotifId notif;
  ClientId client = 0;
  BrokerIndex host = 0;
  std::uint32_t hops = 0;
  SimTime delay = 0;
};

struct NotificationRecord {
  ClientId publisher = 0;
  BrokerIndex host = 0;
  SimTime published_at = 0;
  std::vector<ClientId> delivered;  // in delivery order; duplicates would show here
};

struct QueueSample {
  SimTime window_start = 0;
  BrokerIndex from = 0;
  BrokerIndex to = 0;
  std::uint64_t max_q_len = 0;
};

/// Everything a run measured. Deterministic for a given (config, seed).
struct MetricsReport {
  std::array<std::uint64_t, kMessageKindCount> ims{};  // inter-broker sends by kind
  std::uint64_t client_messages = 0;                   // client -> host broker
  std::uint64_t received = 0;                          // inter-broker arrivals
  std::uint64_t in_flight = 0;                         // queued or on the wire at the end
  std::uint64_t events = 0;
  std::uint64_t lst_mirror_violations = 0;
  std::uint32_t max_advert_hops = 0;
  std::uint32_t max_sub_hops = 0;
  SimTime end_time = 0;

  NodeCounters counters;  // summed over brokers
  std::vector<std::size_t> srt_sizes;
  std::vector<std::size_t> prt_sizes;

  std::vector<Delivery> deliveries;
  std::map<NotifId, NotificationRecord> notifications;
  std::map<std::pair<BrokerIndex, BrokerIndex>, std::uint64_t> max_q_len;  // per direction
  std::vector<QueueSample> queue_samples;                                  // watched brokers

  std::uint64_t ims_of(MessageKind k) const { return ims[static_cast<std::size_t>(k)]; }
  /// All protocol IMs (background load excluded).
  std::uint64_t total_ims() const;
  std::uint64_t notification_ims() const;
  std::uint64_t total_sent() const;
  std::size_t srt_total() const;
  std::size_t prt_total() const;
  /// Largest output queue of `broker` over the whole run.
  std::uint64_t max_queue_at(BrokerIndex broker) const;
  /// notif -> sorted set of receiving clients.
  std::map<NotifId, std::set<ClientId>> delivered_sets() const;
  std::size_t duplicate_deliveries() const;
};

struct Summary {
  double mean = 0;
  double p50 = 0;
  double p95 = 0;
  double max = 0;
};
Summary summarize(std::vector<double> values);

}  // namespace octopia
