#include "octopia/simulator.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace octopia {

namespace {

SimTime service_time(double rate) {
  // rate is per simulated millisecond.
  return std::max<SimTime>(1, static_cast<SimTime>(std::llround(1000.0 / rate)));
}

std::string kind_name(const Message& m) { return std::string(to_string(kind_of(m))); }

}  // namespace

Simulator::Simulator(const ScotTopology& topo, SimConfig config)
    : topo_(topo), config_(std::move(config)) {
  if (!(config_.links.alink_rate > 0) || !(config_.links.ilink_rate > 0)) {
    throw SimulationError("link service rates must be positive");
  }
  if (config_.links.latency < 0) throw SimulationError("link latency must be non-negative");
  if (config_.broker.window <= 0) throw SimulationError("t_w must be positive");

  const auto n = topo_.broker_count();
  nodes_.reserve(n);
  for (BrokerIndex b = 0; b < n; ++b) {
    if (config_.broker.mode == RoutingMode::TidStatic) {
      nodes_.push_back(std::make_unique<TidBroker>(topo_, b, config_.broker.window));
    } else {
      nodes_.push_back(std::make_unique<Broker>(topo_, b, config_.broker));
    }
  }
  for (BrokerIndex u = 0; u < n; ++u) {
    for (auto v : topo_.overlay().neighbours(u)) {
      Link l;
      l.from = u;
      l.to = v;
      l.nominal_rate = l.rate = topo_.cluster_of(u) == topo_.cluster_of(v) ? config_.links.alink_rate
                                                                           : config_.links.ilink_rate;
      l.latency = config_.links.latency;
      link_ids_.emplace(std::make_pair(u, v), links_.size());
      links_.push_back(std::move(l));
    }
  }
  watched_.assign(n, false);
  for (auto b : config_.watched) watched_.at(b) = true;
}

Simulator::~Simulator() = default;

const Broker* Simulator::broker(BrokerIndex b) const {
  return dynamic_cast<const Broker*>(nodes_.at(b).get());
}

const TidBroker* Simulator::tid_broker(BrokerIndex b) const {
  return dynamic_cast<const TidBroker*>(nodes_.at(b).get());
}

void Simulator::set_trace(TraceSink* sink) {
  trace_ = sink;
  for (auto& n : nodes_) n->set_trace(sink);
}

ClientId Simulator::add_client(std::string name, BrokerIndex host) {
  if (host >= topo_.broker_count()) throw SimulationError(fmt::format("client '{}' on unknown broker", name));
  clients_.push_back({std::move(name), host, 1});
  return static_cast<ClientId>(clients_.size() - 1);
}

void Simulator::schedule(Event e) {
  if (e.time < now_) throw SimulationError("event scheduled in the past");
  e.seq = next_seq_++;
  events_.push(std::move(e));
}

AdvId Simulator::advertise(ClientId publisher, Filter filter, SimTime at) {
  auto& c = clients_.at(publisher);
  Advertisement adv{AdvId{publisher, c.next_seq++}, publisher, std::move(filter)};
  adverts_.emplace(adv.id, adv);
  Event e;
  e.time = at;
  e.kind = EventKind::ClientAction;
  e.client = publisher;
  e.msg = AdvertiseMsg{adv, std::nullopt, std::nullopt, 0};
  schedule(std::move(e));
  return adv.id;
}

SubId Simulator::subscribe(ClientId subscriber, Filter filter, SimTime at) {
  auto& c = clients_.at(subscriber);
  Subscription sub{SubId{subscriber, c.next_seq++}, subscriber, std::move(filter)};
  subs_.emplace(sub.id, sub);
  Event e;
  e.time = at;
  e.kind = EventKind::ClientAction;
  e.client = subscriber;
  e.msg = SubscribeMsg{sub, {}, 0};
  schedule(std::move(e));
  return sub.id;
}

void Simulator::unsubscribe(ClientId subscriber, SubId id, SimTime at) {
  if (id.client != subscriber) throw SimulationError("unsubscribe of another client's subscription");
  subs_.erase(id);
  Event e;
  e.time = at;
  e.kind = EventKind::ClientAction;
  e.client = subscriber;
  e.msg = UnsubscribeMsg{id};
  schedule(std::move(e));
}

NotifId Simulator::publish(ClientId publisher, AdvId adv, Payload payload, SimTime at) {
  if (adv.client != publisher) throw SimulationError("publish under another client's advertisement");
  auto& c = clients_.at(publisher);
  Notification n;
  n.id = NotifId{publisher, c.next_seq++};
  n.publisher = publisher;
  n.adv = adv;
  n.payload = std::make_shared<const Payload>(std::move(payload));
  n.published_at = at;
  metrics_.notifications[n.id] = NotificationRecord{publisher, c.host, at, {}};
  published_.emplace(n.id, n);
  Event e;
  e.time = at;
  e.kind = EventKind::ClientAction;
  e.client = publisher;
  e.msg = PublishMsg{std::move(n)};
  const auto id = std::get<PublishMsg>(e.msg).notif.id;
  schedule(std::move(e));
  return id;
}

std::size_t Simulator::link_index(BrokerIndex from, BrokerIndex to) const {
  const auto it = link_ids_.find({from, to});
  if (it == link_ids_.end()) {
    throw SimulationError(fmt::format("no link {} -> {}", topo_.name(from), topo_.name(to)));
  }
  return it->second;
}

void Simulator::inject(const CongestionInjection& c) {
  const auto link = link_index(c.from, c.to);
  if (c.end <= c.start) throw SimulationError("congestion window must have end > start");
  if (!(c.degraded_rate > 0) || c.degraded_rate >= links_[link].nominal_rate) {
    throw SimulationError("degraded rate must be positive and below the nominal rate");
  }
  injections_.push_back(c);
  Event start;
  start.time = c.start;
  start.kind = EventKind::DegradeStart;
  start.link = link;
  start.injection = injections_.size() - 1;
  schedule(start);
  Event end = start;
  end.time = c.end;
  end.kind = EventKind::DegradeEnd;
  schedule(end);
}

std::size_t Simulator::queue_length(BrokerIndex from, BrokerIndex to) const {
  return links_[link_index(from, to)].queue.size();
}

void Simulator::check_mirror(const Link& l) {
  if (nodes_[l.from]->lst().q_len(l.to) != l.queue.size()) ++metrics_.lst_mirror_violations;
}

void Simulator::sample_queue(const Link& l) {
  const auto q = static_cast<std::uint64_t>(l.queue.size());
  auto& best = metrics_.max_q_len[{l.from, l.to}];
  best = std::max(best, q);
  if (watched_[l.from]) {
    const auto window = now_ - now_ % config_.broker.window;
    auto& w = window_max_[{window, l.from, l.to}];
    w = std::max(w, q);
  }
}

void Simulator::enqueue(std::size_t link, Message msg) {
  auto& l = links_[link];
  ++metrics_.ims[static_cast<std::size_t>(kind_of(msg))];
  if (trace_ != nullptr && trace_->wants(1)) {
    trace_->record({now_, "enqueue", topo_.name(l.from),
                    fmt::format("to={} kind={} q_len={}", topo_.name(l.to), kind_name(msg), l.queue.size() + 1)});
  }
  l.queue.push_back(std::move(msg));
  nodes_[l.from]->lst().on_enqueue(l.to, now_);
  check_mirror(l);
  sample_queue(l);
  if (!l.busy) start_service(link);
}

void Simulator::start_service(std::size_t link) {
  auto& l = links_[link];
  l.busy = true;
  Event e;
  e.time = now_ + service_time(l.rate);
  e.kind = EventKind::Departure;
  e.link = link;
  schedule(std::move(e));
}

void Simulator::dispatch(BrokerIndex at, const Outbox& out) {
  for (const auto& o : out) {
    if (o.to.is_client) {
      const auto client = o.to.client_id();
      if (client >= clients_.size() || clients_[client].host != at) {
        throw SimulationError(fmt::format("{} delivered to a client it does not host", topo_.name(at)));
      }
      const auto* p = std::get_if<PublishMsg>(&o.msg);
      if (p == nullptr) throw SimulationError("only notifications are delivered to clients");
      auto& rec = metrics_.notifications[p->notif.id];
      rec.delivered.push_back(client);
      metrics_.deliveries.push_back({p->notif.id, client, at, p->notif.hops, now_ - p->notif.published_at});
      if (trace_ != nullptr && trace_->wants(1)) {
        trace_->record({now_, "deliver", topo_.name(at),
                        fmt::format("notif={} client={} hops={}", p->notif.id.str(), clients_[client].name,
                                    p->notif.hops)});
      }
      continue;
    }
    const auto to = o.to.broker_index();
    if (const auto* a = std::get_if<AdvertiseMsg>(&o.msg)) {
      metrics_.max_advert_hops = std::max(metrics_.max_advert_hops, a->hops);
    } else if (const auto* s = std::get_if<SubscribeMsg>(&o.msg)) {
      metrics_.max_sub_hops = std::max(metrics_.max_sub_hops, s->hops);
    }
    enqueue(link_index(at, to), o.msg);
  }
}

SimTime Simulator::run() {
  Outbox out;
  while (!events_.empty()) {
    if (++metrics_.events > config_.event_budget) {
      throw SimulationError(fmt::format("event budget of {} exhausted at t={}us; routing loop?",
                                        config_.event_budget, now_));
    }
    Event e = events_.top();
    events_.pop();
    now_ = e.time;
    out.clear();
    switch (e.kind) {
      case EventKind::ClientAction: {
        const auto host = clients_.at(e.client).host;
        ++metrics_.client_messages;
        nodes_[host]->receive(Hop::client(e.client), e.msg, now_, out);
        dispatch(host, out);
        break;
      }
      case EventKind::Departure: {
        auto& l = links_[e.link];
        Message msg = std::move(l.queue.front());
        l.queue.pop_front();
        nodes_[l.from]->lst().on_dequeue(l.to, now_);
        check_mirror(l);
        Event arrival;
        arrival.time = now_ + l.latency;
        arrival.kind = EventKind::Arrival;
        arrival.link = e.link;
        arrival.msg = std::move(msg);
        ++on_wire_;
        schedule(std::move(arrival));
        if (l.queue.empty()) {
          l.busy = false;
        } else {
          start_service(e.link);
        }
        break;
      }
      case EventKind::Arrival: {
        const auto& l = links_[e.link];
        --on_wire_;
        ++metrics_.received;
        nodes_[l.to]->receive(Hop::broker(l.from), e.msg, now_, out);
        dispatch(l.to, out);
        break;
      }
      case EventKind::DegradeStart: {
        const auto& c = injections_[e.injection];
        links_[e.link].rate = c.degraded_rate;
        for (std::size_t i = 0; i < c.backlog; ++i) enqueue(e.link, BackgroundMsg{});
        break;
      }
      case EventKind::DegradeEnd:
        links_[e.link].rate = links_[e.link].nominal_rate;
        break;
    }
  }
  metrics_.end_time = now_;
  return now_;
}

MetricsReport Simulator::report() const {
  MetricsReport r = metrics_;
  std::uint64_t queued = 0;
  for (const auto& l : links_) queued += l.queue.size();
  r.in_flight = queued + on_wire_;
  r.srt_sizes.clear();
  r.prt_sizes.clear();
  for (const auto& n : nodes_) {
    r.srt_sizes.push_back(n->srt_size());
    r.prt_sizes.push_back(n->prt_size());
    const auto& c = n->counters();
    r.counters.duplicate_adverts += c.duplicate_adverts;
    r.counters.duplicate_subs += c.duplicate_subs;
    r.counters.dedup_suppressed += c.dedup_suppressed;
    r.counters.dropped_notifications += c.dropped_notifications;
    r.counters.forced_congested_sends += c.forced_congested_sends;
    r.counters.unknown_references += c.unknown_references;
    r.counters.hop_limit_drops += c.hop_limit_drops;
  }
  r.queue_samples.clear();
  for (const auto& [key, q] : window_max_) {
    r.queue_samples.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), q});
  }
  return r;
}

}  // namespace octopia
