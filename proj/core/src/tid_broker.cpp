#include "octopia/tid_broker.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace octopia {

TidBroker::TidBroker(const ScotTopology& topo, BrokerIndex self, SimTime window)
    : RoutingNode(topo, self, window) {}

void TidBroker::receive(const Hop& from, const Message& msg, SimTime now, Outbox& out) {
  struct Visitor {
    TidBroker& b;
    const Hop& from;
    SimTime now;
    Outbox& out;
    void operator()(const AdvertiseMsg& m) { b.tid_advertise(from, m, now, out); }
    void operator()(const SubscribeMsg& m) { b.tid_subscribe(from, m, now, out); }
    void operator()(const UnsubscribeMsg& m) { b.tid_unsubscribe(from, m, now, out); }
    void operator()(const CibSetMsg&) { ++b.counters_.unknown_references; }
    void operator()(const CibClearMsg&) { ++b.counters_.unknown_references; }
    void operator()(const PublishMsg& m) { b.tid_route(from, m.notif, now, out); }
    void operator()(const BackgroundMsg&) {}
  };
  std::visit(Visitor{*this, from, now, out}, msg);
}

bool TidBroker::stores_subscription(const SubId& id) const {
  const auto it = prt_.lower_bound({id, Hop{}});
  return it != prt_.end() && it->first.first == id;
}

Tid TidBroker::tid_of(const AdvId& id) const {
  const auto it = by_adv_.find(id);
  return it == by_adv_.end() ? 0 : it->second;
}

void TidBroker::tid_advertise(const Hop& from, const AdvertiseMsg& m, SimTime now, Outbox& out) {
  Tid tid = 0;
  if (from.is_client) {
    if (by_adv_.count(m.adv.id) != 0) {
      ++counters_.duplicate_adverts;
      return;
    }
    tid = make_tid(self_, next_seq_++);
  } else {
    tid = m.tid.value_or(0);
    if (srt_.count(tid) != 0) {
      ++counters_.duplicate_adverts;
      trace(2, now, "duplicate_advertisement", fmt::format("tid={:x} from={}", tid, hop_name(from)));
      return;
    }
  }
  srt_.emplace(tid, TidSrtEntry{m.adv, from, tid});
  by_adv_.emplace(m.adv.id, tid);
  trace(2, now, "srt_store", fmt::format("adv={} tid={:x} last_hop={}", m.adv.id.str(), tid, hop_name(from)));

  for (auto peer : topo_.overlay().neighbours(self_)) {
    if (from == Hop::broker(peer)) continue;
    out.push_back({Hop::broker(peer), AdvertiseMsg{m.adv, std::nullopt, tid, m.hops + 1}});
  }

  // Local subscriptions registered before this tree existed follow it now.
  for (auto& [key, e] : prt_) {
    if (!e.last_hop.is_client || !overlaps(m.adv.filter, e.sub.filter)) continue;
    e.bound_tids.insert(tid);
    forward_subscription(e.sub, {tid}, 0, now, out);
  }
}

void TidBroker::forward_subscription(const Subscription& sub, const std::vector<Tid>& tids,
                                     std::uint32_t hops, SimTime now, Outbox& out) {
  auto& followed = followed_[sub.id];
  std::map<BrokerIndex, std::vector<Tid>> by_next_hop;
  for (auto tid : tids) {
    if (!followed.insert(tid).second) continue;
    const auto it = srt_.find(tid);
    if (it == srt_.end()) {
      ++counters_.unknown_references;
      continue;
    }
    if (it->second.last_hop.is_client) continue;  // this broker is the root
    by_next_hop[it->second.last_hop.broker_index()].push_back(tid);
  }
  for (auto& [next, group] : by_next_hop) {
    forwarded_to_[sub.id].insert(next);
    trace(2, now, "subscription_forward", fmt::format("sub={} to={} tids={}", sub.id.str(),
                                                      topo_.name(next), group.size()));
    out.push_back({Hop::broker(next), SubscribeMsg{sub, std::move(group), hops + 1}});
  }
}

void TidBroker::tid_subscribe(const Hop& from, const SubscribeMsg& m, SimTime now, Outbox& out) {
  std::vector<Tid> tids;
  if (from.is_client) {
    for (const auto& [tid, e] : srt_) {
      if (overlaps(e.adv.filter, m.sub.filter)) tids.push_back(tid);
    }
  } else {
    tids = m.tids;
  }
  auto& entry = prt_[{m.sub.id, from}];
  if (entry.sub.filter.empty()) {
    entry.sub = m.sub;
    entry.last_hop = from;
    trace(2, now, "prt_store", fmt::format("sub={} last_hop={}", m.sub.id.str(), hop_name(from)));
  } else {
    ++counters_.duplicate_subs;
  }
  entry.bound_tids.insert(tids.begin(), tids.end());
  forward_subscription(m.sub, tids, m.hops, now, out);
}

void TidBroker::tid_unsubscribe(const Hop& from, const UnsubscribeMsg& m, SimTime now, Outbox& out) {
  auto it = prt_.lower_bound({m.sub_id, Hop{}});
  bool any = false;
  while (it != prt_.end() && it->first.first == m.sub_id) {
    it = prt_.erase(it);
    any = true;
  }
  if (!any) return;
  trace(2, now, "prt_remove", m.sub_id.str());
  followed_.erase(m.sub_id);
  const auto fwd = forwarded_to_.find(m.sub_id);
  if (fwd == forwarded_to_.end()) return;
  for (auto next : fwd->second) {
    if (from == Hop::broker(next)) continue;
    out.push_back({Hop::broker(next), m});
  }
  forwarded_to_.erase(fwd);
}

void TidBroker::tid_route(const Hop& from, const Notification& n, SimTime now, Outbox& out) {
  if (n.hops > hop_limit()) {
    ++counters_.hop_limit_drops;
    return;
  }
  Tid tid = 0;
  if (from.is_client) {
    tid = tid_of(n.adv);
    if (tid == 0) {
      ++counters_.unknown_references;
      return;
    }
  } else {
    tid = n.tid.value_or(0);
  }

  std::set<BrokerIndex> next_hops;
  std::size_t delivered = 0;
  for (const auto& [key, e] : prt_) {
    if (e.last_hop == from || e.bound_tids.count(tid) == 0) continue;
    if (!matches(*n.payload, e.sub.filter)) continue;
    if (e.last_hop.is_client) {
      if (delivered_.emplace(n.id, e.last_hop.client_id()).second) {
        Notification copy = n;
        copy.tid = tid;
        out.push_back({e.last_hop, PublishMsg{std::move(copy)}});
        ++delivered;
      }
    } else {
      next_hops.insert(e.last_hop.broker_index());
    }
  }
  for (auto next : next_hops) {
    if (!sent_.emplace(n.id, next).second) {
      ++counters_.dedup_suppressed;
      continue;
    }
    Notification copy = n;
    copy.tid = tid;
    copy.civ.reset();
    copy.hops = n.hops + 1;
    trace(1, now, "send_notification", fmt::format("notif={} to={}", n.id.str(), topo_.name(next)));
    out.push_back({Hop::broker(next), PublishMsg{std::move(copy)}});
  }
  if (next_hops.empty() && delivered == 0) ++counters_.dropped_notifications;
}

}  // namespace octopia
