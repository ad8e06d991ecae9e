#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "octopia/routing_node.hpp"

namespace octopia {

struct TidSrtEntry {
  Advertisement adv;
  Hop last_hop;
  Tid tid = 0;
};

struct TidPrtEntry {
  Subscription sub;
  Hop last_hop;
  std::set<Tid> bound_tids;  // empty only for a local subscription nothing matches yet
};

/// Flooding baseline: every broker stores every advertisement, duplicates
/// are discarded by tree id, subscriptions retrace advertisement trees and
/// notifications follow the subscription paths bound to their tree id.
class TidBroker : public RoutingNode {
 public:
  TidBroker(const ScotTopology& topo, BrokerIndex self, SimTime window);

  void receive(const Hop& from, const Message& msg, SimTime now, Outbox& out) override;

  void tid_advertise(const Hop& from, const AdvertiseMsg& m, SimTime now, Outbox& out);
  void tid_subscribe(const Hop& from, const SubscribeMsg& m, SimTime now, Outbox& out);
  void tid_unsubscribe(const Hop& from, const UnsubscribeMsg& m, SimTime now, Outbox& out);
  void tid_route(const Hop& from, const Notification& n, SimTime now, Outbox& out);

  std::size_t srt_size() const override { return srt_.size(); }
  std::size_t prt_size() const override { return prt_.size(); }
  bool stores_advertisement(const AdvId& id) const override { return by_adv_.count(id) != 0; }
  bool stores_subscription(const SubId& id) const override;

  const std::map<Tid, TidSrtEntry>& srt() const { return srt_; }
  const std::map<std::pair<SubId, Hop>, TidPrtEntry>& prt() const { return prt_; }
  /// Tree id the host broker stamped on an advertisement (0 if unknown).
  Tid tid_of(const AdvId& id) const;

  static Tid make_tid(BrokerIndex root, std::uint32_t seq) {
    return (static_cast<Tid>(root) << 32) | seq;
  }

 private:
  // Sends `sub` toward the roots of `tids` not yet followed from here.
  void forward_subscription(const Subscription& sub, const std::vector<Tid>& tids, std::uint32_t hops,
                            SimTime now, Outbox& out);

  std::map<Tid, TidSrtEntry> srt_;
  std::map<AdvId, Tid> by_adv_;
  std::map<std::pair<SubId, Hop>, TidPrtEntry> prt_;
  // Tree ids each subscription was already forwarded along, and where to.
  std::map<SubId, std::set<Tid>> followed_;
  std::map<SubId, std::set<BrokerIndex>> forwarded_to_;
  std::set<std::pair<NotifId, BrokerIndex>> sent_;
  std::set<std::pair<NotifId, ClientId>> delivered_;
  std::uint32_t next_seq_ = 1;
};

}  // namespace octopia
