#include "octopia/broker.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

namespace octopia {

std::string_view to_string(RoutingMode m) {
  switch (m) {
    case RoutingMode::Snr: return "snr";
    case RoutingMode::Idr: return "idr";
    case RoutingMode::TidStatic: return "tid-static";
  }
  return "?";
}

RoutingMode parse_routing_mode(std::string_view text) {
  if (text == "snr") return RoutingMode::Snr;
  if (text == "idr") return RoutingMode::Idr;
  if (text == "tid-static" || text == "tid") return RoutingMode::TidStatic;
  throw std::invalid_argument(fmt::format("unknown routing mode '{}' (snr, idr, tid-static)", text));
}

std::string_view to_string(RoutingCase c) {
  switch (c) {
    case RoutingCase::Static: return "static";
    case RoutingCase::I: return "i";
    case RoutingCase::II: return "ii";
    case RoutingCase::III: return "iii";
    case RoutingCase::IV: return "iv";
  }
  return "?";
}

Broker::Broker(const ScotTopology& topo, BrokerIndex self, BrokerParams params)
    : RoutingNode(topo, self, params.window), params_(params) {
  if (params_.mode == RoutingMode::TidStatic) {
    throw std::invalid_argument("Broker does not implement the TID baseline; use TidBroker");
  }
  if (!(params_.tau > 0)) throw std::invalid_argument("tau must be positive");
}

void Broker::receive(const Hop& from, const Message& msg, SimTime now, Outbox& out) {
  struct Visitor {
    Broker& b;
    const Hop& from;
    SimTime now;
    Outbox& out;
    void operator()(const AdvertiseMsg& m) { b.handle_advertise(from, m, now, out); }
    void operator()(const SubscribeMsg& m) { b.handle_subscribe(from, m, now, out); }
    void operator()(const UnsubscribeMsg& m) { b.handle_unsubscribe(from, m, now, out); }
    void operator()(const CibSetMsg& m) { b.handle_cib_set(from, m, now); }
    void operator()(const CibClearMsg& m) { b.handle_cib_clear(from, m, now); }
    void operator()(const PublishMsg& m) { b.route(from, m.notif, now, out); }
    void operator()(const BackgroundMsg&) {}
  };
  std::visit(Visitor{*this, from, now, out}, msg);
}

const SrtEntry* Broker::srt_entry(const AdvId& id) const {
  const auto it = srt_.find(id);
  return it == srt_.end() ? nullptr : &it->second;
}

const PrtEntry* Broker::first_overlapping(const Filter& adv_filter) const {
  for (const auto& [id, e] : prt_) {
    if (overlaps(adv_filter, e.sub.filter)) return &e;
  }
  return nullptr;
}

bool Broker::prt_overlaps(const Filter& adv_filter) const {
  return first_overlapping(adv_filter) != nullptr;
}

// The host-cluster bit of an A_cxt vector tracks whether the host broker's
// own PRT (which holds every subscription of the host cluster) overlaps.
void Broker::refresh_host_bit(SrtEntry& e, SimTime now) {
  const bool want = prt_overlaps(e.adv.filter);
  if (want == e.civ.test(ci())) return;
  if (want) {
    e.civ.set(ci());
  } else {
    e.civ.clear(ci());
  }
  trace(2, now, "civ_update", fmt::format("adv={} civ={}", e.adv.id.str(), e.civ.str()));
}

void Broker::handle_advertise(const Hop& from, const AdvertiseMsg& m, SimTime now, Outbox& out) {
  if (srt_.count(m.adv.id) != 0) {
    ++counters_.duplicate_adverts;
    trace(2, now, "duplicate_advertisement", m.adv.id.str());
    return;
  }
  const auto width = topo_.cluster_count();

  if (from.is_client) {
    SrtEntry e{m.adv, from, Civ(width, CivContext::Advertisement, ci()), true};
    refresh_host_bit(e, now);
    trace(2, now, "srt_store", fmt::format("adv={} host civ={}", m.adv.id.str(), e.civ.str()));
    srt_.emplace(m.adv.id, std::move(e));
    for (auto peer : topo_.neighbours(self_).secondary) {
      AdvertiseMsg copy{m.adv, Civ(width, CivContext::Subscription, topo_.cluster_of(peer)).with_bit(ci()),
                        std::nullopt, m.hops + 1};
      out.push_back({Hop::broker(peer), std::move(copy)});
    }
    return;
  }

  const auto sender = from.broker_index();
  if (topo_.region_of(sender) != topo_.region_of(self_)) {
    throw std::logic_error(fmt::format("{} got an advertisement from non-secondary {}",
                                       topo_.name(self_), topo_.name(sender)));
  }
  Civ civ = m.civ ? *m.civ : Civ(width, CivContext::Subscription, ci()).with_bit(topo_.cluster_of(sender));
  SrtEntry e{m.adv, from, civ, false};
  // Secondary brokers never forward: the advertisement tree has length one.
  if (const auto* match = first_overlapping(m.adv.filter)) {
    e.civ.set(ci());
    out.push_back({from, CibSetMsg{m.adv.id, ci(), match->sub}});
    trace(2, now, "cib_set_sent", fmt::format("adv={} to={}", m.adv.id.str(), hop_name(from)));
  }
  trace(2, now, "srt_store", fmt::format("adv={} civ={}", m.adv.id.str(), e.civ.str()));
  srt_.emplace(m.adv.id, std::move(e));
}

void Broker::handle_subscribe(const Hop& from, const SubscribeMsg& m, SimTime now, Outbox& out) {
  if (prt_.count(m.sub.id) != 0) {
    ++counters_.duplicate_subs;
    return;
  }
  if (!from.is_client && topo_.cluster_of(from.broker_index()) != ci()) {
    throw std::logic_error(fmt::format("{} got a subscription across an iLink", topo_.name(self_)));
  }
  prt_.emplace(m.sub.id, PrtEntry{m.sub, from});
  trace(2, now, "prt_store", fmt::format("sub={} last_hop={}", m.sub.id.str(), hop_name(from)));

  for (auto peer : topo_.neighbours(self_).primary) {
    if (from == Hop::broker(peer)) continue;
    out.push_back({Hop::broker(peer), SubscribeMsg{m.sub, {}, m.hops + 1}});
  }

  for (auto& [id, e] : srt_) {
    if (!overlaps(e.adv.filter, m.sub.filter)) continue;
    if (e.host) {
      refresh_host_bit(e, now);
    } else if (!e.civ.test(ci())) {
      e.civ.set(ci());
      out.push_back({e.last_hop, CibSetMsg{id, ci(), m.sub}});
      trace(2, now, "cib_set_sent", fmt::format("adv={} to={}", id.str(), hop_name(e.last_hop)));
    }
  }
}

void Broker::handle_unsubscribe(const Hop& from, const UnsubscribeMsg& m, SimTime now, Outbox& out) {
  const auto it = prt_.find(m.sub_id);
  if (it == prt_.end()) return;
  prt_.erase(it);
  trace(2, now, "prt_remove", m.sub_id.str());

  for (auto peer : topo_.neighbours(self_).primary) {
    if (from == Hop::broker(peer)) continue;
    out.push_back({Hop::broker(peer), m});
  }

  for (auto& [id, e] : srt_) {
    if (e.host) {
      refresh_host_bit(e, now);
    } else if (e.civ.test(ci()) && !prt_overlaps(e.adv.filter)) {
      e.civ.clear(ci());
      out.push_back({e.last_hop, CibClearMsg{id, ci()}});
      trace(2, now, "cib_clear_sent", fmt::format("adv={} to={}", id.str(), hop_name(e.last_hop)));
    }
  }
}

void Broker::handle_cib_set(const Hop& from, const CibSetMsg& m, SimTime now) {
  const auto it = srt_.find(m.adv_id);
  if (it == srt_.end() || !it->second.host) {
    ++counters_.unknown_references;
    trace(1, now, "cib_set_unknown", fmt::format("adv={} from={}", m.adv_id.str(), hop_name(from)));
    return;
  }
  // The carried subscription is informational; the host PRT stays clean.
  it->second.civ.set(m.from_ci);
  trace(2, now, "civ_update", fmt::format("adv={} civ={}", m.adv_id.str(), it->second.civ.str()));
}

void Broker::handle_cib_clear(const Hop& from, const CibClearMsg& m, SimTime now) {
  const auto it = srt_.find(m.adv_id);
  if (it == srt_.end() || !it->second.host) {
    ++counters_.unknown_references;
    trace(1, now, "cib_clear_unknown", fmt::format("adv={} from={}", m.adv_id.str(), hop_name(from)));
    return;
  }
  it->second.civ.clear(m.from_ci);
  trace(2, now, "civ_update", fmt::format("adv={} civ={}", m.adv_id.str(), it->second.civ.str()));
}

std::size_t Broker::count_gamma(ClientId publisher, SimTime now) {
  auto& [start, count] = gamma_[publisher];
  const auto window_start = now - now % params_.window;
  if (start != window_start) {
    start = window_start;
    count = 0;
  }
  return ++count;
}

BrokerIndex Broker::least_loaded(const std::vector<BrokerIndex>& candidates) const {
  return *std::min_element(candidates.begin(), candidates.end(), [&](BrokerIndex a, BrokerIndex b) {
    const auto qa = lst_.q_len(a);
    const auto qb = lst_.q_len(b);
    return qa != qb ? qa < qb : topo_.id(a) < topo_.id(b);
  });
}

void Broker::emit(BrokerIndex to, const Notification& n, const std::optional<Civ>& civ, SimTime now,
                  Outbox& out) {
  if (!sent_.emplace(n.id, to).second) {
    ++counters_.dedup_suppressed;
    return;
  }
  Notification copy = n;
  copy.civ = civ;
  copy.tid.reset();
  copy.hops = n.hops + 1;
  if (tracing(1)) {
    trace(1, now, civ ? "send_civ_n" : "send_notification",
          fmt::format("notif={} to={}{}", n.id.str(), topo_.name(to), civ ? " civ=" + civ->str() : ""));
  }
  out.push_back({Hop::broker(to), PublishMsg{std::move(copy)}});
}

void Broker::route(const Hop& from, const Notification& n, SimTime now, Outbox& out) {
  if (n.hops > hop_limit()) {
    ++counters_.hop_limit_drops;
    return;
  }
  const bool host = from.is_client;
  const SrtEntry* adv = nullptr;
  if (host) {
    adv = srt_entry(n.adv);
    if (adv == nullptr || !adv->host) {
      ++counters_.unknown_references;
      trace(1, now, "publish_without_advertisement", n.id.str());
      return;
    }
  }

  // Reverse-path forwarding over the PRT, plus local deliveries.
  std::vector<BrokerIndex> alink_targets;
  std::size_t delivered = 0;
  for (const auto& [id, e] : prt_) {
    if (e.last_hop == from || !matches(*n.payload, e.sub.filter)) continue;
    if (e.last_hop.is_client) {
      if (delivered_.emplace(n.id, e.last_hop.client_id()).second) {
        Notification copy = n;
        copy.civ.reset();
        out.push_back({e.last_hop, PublishMsg{std::move(copy)}});
        ++delivered;
      }
    } else if (std::find(alink_targets.begin(), alink_targets.end(), e.last_hop.broker_index()) ==
               alink_targets.end()) {
      alink_targets.push_back(e.last_hop.broker_index());
    }
  }
  std::sort(alink_targets.begin(), alink_targets.end());

  // Clusters this broker must still serve over iLinks.
  std::vector<ClusterIndex> owed;
  if (host) {
    for (auto c : adv->civ.set_bits()) {
      if (c != ci()) owed.push_back(c);
    }
  } else if (n.civ) {
    for (auto c : n.civ->set_bits()) {
      if (c != ci()) owed.push_back(c);
    }
  }

  std::map<BrokerIndex, std::optional<Civ>> plan;
  for (auto a : alink_targets) plan[a];

  RoutingStep step;
  step.notif = n.id;
  step.time = now;
  step.host = host;
  step.stats.alpha = alink_targets.size();
  step.stats.beta = owed.size();
  step.stats.gamma = host ? count_gamma(n.publisher, now) : 0;

  std::vector<ClusterIndex> residual;
  std::vector<BrokerIndex> open_ilinks;
  for (auto c : owed) {
    const auto peer = topo_.region_peer(self_, c);
    if (params_.mode == RoutingMode::Idr && lst_.congested(peer, now, params_.tau)) {
      residual.push_back(c);
    } else {
      open_ilinks.push_back(peer);
      plan[peer];
    }
  }
  step.stats.ol = residual.size();
  step.stats.theta = owed.size() - residual.size();
  step.routing_case = (host || owed.empty()) ? RoutingCase::Static : RoutingCase::III;

  if (!residual.empty()) {
    Civ civ_n(topo_.cluster_count(), CivContext::Publication, ci());
    for (auto c : residual) civ_n.set(c);

    std::vector<BrokerIndex> open_alinks;
    for (auto a : alink_targets) {
      if (!lst_.congested(a, now, params_.tau)) open_alinks.push_back(a);
    }

    BrokerIndex carrier = 0;
    if (!open_ilinks.empty()) {
      // (i): ride along with a copy already headed for an unoverloaded iLink.
      carrier = least_loaded(open_ilinks);
      step.routing_case = host ? RoutingCase::I : RoutingCase::III;
    } else if (!open_alinks.empty()) {
      // (ii)/(iii): hand the owed clusters to a neighbour in this cluster.
      carrier = least_loaded(open_alinks);
      step.routing_case = host ? RoutingCase::II : RoutingCase::III;
    } else {
      // (iv): nothing unoverloaded; use the least loaded congested iLink.
      std::vector<BrokerIndex> congested;
      for (auto c : residual) congested.push_back(topo_.region_peer(self_, c));
      carrier = least_loaded(congested);
      civ_n.clear(topo_.cluster_of(carrier));
      ++counters_.forced_congested_sends;
      step.routing_case = RoutingCase::IV;
    }
    if (civ_n.any()) {
      plan[carrier] = civ_n;
      step.civ_n = civ_n;
      step.civ_n_to = carrier;
    } else {
      plan[carrier];
    }
  }

  for (const auto& [to, civ] : plan) emit(to, n, civ, now, out);
  step.copies = plan.size();
  if (plan.empty() && delivered == 0) ++counters_.dropped_notifications;

  if (tracing(2) && params_.mode == RoutingMode::Idr && !owed.empty()) {
    trace(2, now, "idr_step",
          fmt::format("notif={} case={} alpha={} beta={} theta={} ol={} gamma={}", n.id.str(),
                      to_string(step.routing_case), step.stats.alpha, step.stats.beta,
                      step.stats.theta, step.stats.ol, step.stats.gamma));
  }
  if (params_.keep_routing_log) routing_log_.push_back(std::move(step));
}

}  // namespace octopia
