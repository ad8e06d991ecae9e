#pragma once

#include <map>
#include <optional>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

#include "octopia/routing_node.hpp"

namespace octopia {

enum class RoutingMode { Snr, Idr, TidStatic };

std::string_view to_string(RoutingMode m);
/// Accepts "snr", "idr", "tid-static". Throws std::invalid_argument.
RoutingMode parse_routing_mode(std::string_view text);

struct BrokerParams {
  RoutingMode mode = RoutingMode::Snr;
  double tau = 10.0;
  SimTime window = 50 * kMillisecond;
  bool keep_routing_log = false;
};

struct SrtEntry {
  Advertisement adv;
  Hop last_hop;
  Civ civ;  // A_cxt at the host broker, S_cxt elsewhere
  bool host = false;
};

struct PrtEntry {
  Subscription sub;
  Hop last_hop;
};

enum class RoutingCase { Static, I, II, III, IV };
std::string_view to_string(RoutingCase c);

struct RoutingStepStats {
  std::size_t alpha = 0;  // target aLinks
  std::size_t beta = 0;   // target iLinks (clusters owed by this broker)
  std::size_t theta = 0;  // unoverloaded target iLinks
  std::size_t ol = 0;     // overloaded target iLinks
  std::size_t gamma = 0;  // notifications from this publisher in the current window
};

struct RoutingStep {
  NotifId notif;
  SimTime time = 0;
  bool host = false;
  RoutingCase routing_case = RoutingCase::Static;
  RoutingStepStats stats;
  std::optional<Civ> civ_n;  // P_cxt vector attached to one outgoing copy
  BrokerIndex civ_n_to = 0;
  std::size_t copies = 0;
};

/// OctopiA broker: advertisements stay in the host region, subscriptions in
/// the host cluster, and CIVs tell the host broker which clusters want its
/// notifications. Routes notifications with SNR or IDR.
class Broker : public RoutingNode {
 public:
  Broker(const ScotTopology& topo, BrokerIndex self, BrokerParams params);

  void receive(const Hop& from, const Message& msg, SimTime now, Outbox& out) override;

  void handle_advertise(const Hop& from, const AdvertiseMsg& m, SimTime now, Outbox& out);
  void handle_subscribe(const Hop& from, const SubscribeMsg& m, SimTime now, Outbox& out);
  void handle_unsubscribe(const Hop& from, const UnsubscribeMsg& m, SimTime now, Outbox& out);
  void handle_cib_set(const Hop& from, const CibSetMsg& m, SimTime now);
  void handle_cib_clear(const Hop& from, const CibClearMsg& m, SimTime now);
  /// SNR or IDR depending on params().mode.
  void route(const Hop& from, const Notification& n, SimTime now, Outbox& out);

  std::size_t srt_size() const override { return srt_.size(); }
  std::size_t prt_size() const override { return prt_.size(); }
  bool stores_advertisement(const AdvId& id) const override { return srt_.count(id) != 0; }
  bool stores_subscription(const SubId& id) const override { return prt_.count(id) != 0; }

  const std::map<AdvId, SrtEntry>& srt() const { return srt_; }
  const std::map<SubId, PrtEntry>& prt() const { return prt_; }
  const SrtEntry* srt_entry(const AdvId& id) const;

  const BrokerParams& params() const { return params_; }
  const std::vector<RoutingStep>& routing_log() const { return routing_log_; }

 private:
  ClusterIndex ci() const { return topo_.cluster_of(self_); }
  bool prt_overlaps(const Filter& adv_filter) const;
  const PrtEntry* first_overlapping(const Filter& adv_filter) const;
  void refresh_host_bit(SrtEntry& e, SimTime now);
  std::size_t count_gamma(ClientId publisher, SimTime now);
  /// Least q_len, then smallest BrokerId.
  BrokerIndex least_loaded(const std::vector<BrokerIndex>& candidates) const;
  void emit(BrokerIndex to, const Notification& n, const std::optional<Civ>& civ, SimTime now,
            Outbox& out);

  BrokerParams params_;
  std::map<AdvId, SrtEntry> srt_;
  std::map<SubId, PrtEntry> prt_;
  std::set<std::pair<NotifId, BrokerIndex>> sent_;
  std::set<std::pair<NotifId, ClientId>> delivered_;
  std::map<ClientId, std::pair<SimTime, std::size_t>> gamma_;
  std::vector<RoutingStep> routing_log_;
};

}  // namespace octopia
