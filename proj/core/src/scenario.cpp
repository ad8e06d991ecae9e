#include "octopia/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "octopia/presets.hpp"

namespace octopia {

namespace {

using nlohmann::json;

SimTime ms_to_us(double ms) { return static_cast<SimTime>(std::llround(ms * 1000.0)); }
double us_to_ms(SimTime us) { return static_cast<double>(us) / 1000.0; }

void reject_unknown(const json& j, const std::string& where, std::initializer_list<const char*> known) {
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; })) {
      throw ConfigError(fmt::format("{}: unknown field '{}'", where, key));
    }
  }
}

template <typename T>
T get(const json& j, const char* key, const std::string& where, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(fmt::format("{}.{}: wrong type", where, key));
  }
}

double get_ms(const json& j, const char* key, const std::string& where, SimTime fallback) {
  return get<double>(j, key, where, us_to_ms(fallback));
}

const json& require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(fmt::format("{}: expected an object", where));
  return j;
}

std::string fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return fmt::format("{:016x}", h);
}

std::string fmt_double(double v) { return fmt::format("{:.6f}", v); }

// Counts print as integers, everything else with fixed precision.
std::string fmt_number(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) return fmt::format("{}", static_cast<std::int64_t>(v));
  return fmt_double(v);
}

std::uint64_t watched_max_queue(const ScenarioResult& r) {
  std::uint64_t best = 0;
  for (const auto& name : r.config.watch) {
    best = std::max(best, r.report.max_queue_at(r.topology->index_of(parse_broker_id(name))));
  }
  return best;
}

struct DeliveryCheck {
  std::size_t expected = 0;
  std::size_t missing = 0;
  std::size_t unexpected = 0;
};

DeliveryCheck check_deliveries(const ScenarioResult& r) {
  DeliveryCheck c;
  const auto expected = expected_deliveries(r);
  const auto actual = r.report.delivered_sets();
  for (const auto& [id, want] : expected) {
    c.expected += want.size();
    const auto it = actual.find(id);
    const std::set<ClientId> got = it == actual.end() ? std::set<ClientId>{} : it->second;
    for (auto w : want) c.missing += got.count(w) == 0;
    for (auto g : got) c.unexpected += want.count(g) == 0;
  }
  return c;
}

}  // namespace

ScenarioConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("config is not valid JSON: {}", e.what()));
  }
  require_object(j, "config");
  reject_unknown(j, "config",
                 {"name", "topology", "routing", "seed", "tau", "t_w_ms", "links", "phase_gap_ms", "event_budget",
                  "routing_log", "workload", "burst", "clients", "notifications", "congestion", "watch"});

  ScenarioConfig c;
  c.name = get<std::string>(j, "name", "config", c.name);
  if (j.contains("topology")) {
    const auto& t = require_object(j["topology"], "topology");
    reject_unknown(t, "topology", {"preset", "af", "cf"});
    c.preset = get<std::string>(t, "preset", "topology", "");
    c.af_file = get<std::string>(t, "af", "topology", "");
    c.cf_file = get<std::string>(t, "cf", "topology", "");
    if (c.preset.empty() == c.af_file.empty() || c.af_file.empty() != c.cf_file.empty()) {
      throw ConfigError("topology: give either 'preset' or both 'af' and 'cf'");
    }
  }
  try {
    c.routing = parse_routing_mode(get<std::string>(j, "routing", "config", "snr"));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(fmt::format("routing: {}", e.what()));
  }
  c.seed = get<std::uint64_t>(j, "seed", "config", c.seed);
  c.tau = get<double>(j, "tau", "config", c.tau);
  c.t_w = ms_to_us(get_ms(j, "t_w_ms", "config", c.t_w));
  c.phase_gap = ms_to_us(get_ms(j, "phase_gap_ms", "config", c.phase_gap));
  c.event_budget = get<std::uint64_t>(j, "event_budget", "config", c.event_budget);
  c.keep_routing_log = get<bool>(j, "routing_log", "config", c.keep_routing_log);

  if (j.contains("links")) {
    const auto& l = require_object(j["links"], "links");
    reject_unknown(l, "links", {"latency_ms", "alink_rate", "ilink_rate"});
    c.links.latency = ms_to_us(get_ms(l, "latency_ms", "links", c.links.latency));
    c.links.alink_rate = get<double>(l, "alink_rate", "links", c.links.alink_rate);
    c.links.ilink_rate = get<double>(l, "ilink_rate", "links", c.links.ilink_rate);
  }
  if (j.contains("workload")) {
    const auto& w = require_object(j["workload"], "workload");
    reject_unknown(w, "workload",
                   {"publishers", "subscribers", "notifications", "selectivity", "symbols", "publish_interval_ms"});
    WorkloadSpec s;
    s.publishers = get<std::size_t>(w, "publishers", "workload", s.publishers);
    s.subscribers = get<std::size_t>(w, "subscribers", "workload", s.subscribers);
    s.notifications = get<std::size_t>(w, "notifications", "workload", s.notifications);
    s.selectivity = get<double>(w, "selectivity", "workload", s.selectivity);
    s.symbols = get<std::size_t>(w, "symbols", "workload", s.symbols);
    s.publish_interval = ms_to_us(get_ms(w, "publish_interval_ms", "workload", s.publish_interval));
    c.workload = s;
  }
  if (j.contains("burst")) {
    const auto& b = require_object(j["burst"], "burst");
    reject_unknown(b, "burst", {"notifications", "interval_ms", "interested_fraction", "hrp_host"});
    BurstSpec s;
    s.notifications = get<std::size_t>(b, "notifications", "burst", s.notifications);
    s.interval = ms_to_us(get_ms(b, "interval_ms", "burst", s.interval));
    s.interested_fraction = get<double>(b, "interested_fraction", "burst", s.interested_fraction);
    s.hrp_host = get<std::string>(b, "hrp_host", "burst", s.hrp_host);
    c.burst = s;
  }
  if (j.contains("clients")) {
    if (!j["clients"].is_array()) throw ConfigError("clients: expected an array");
    for (std::size_t i = 0; i < j["clients"].size(); ++i) {
      const auto where = fmt::format("clients[{}]", i);
      const auto& e = require_object(j["clients"][i], where);
      reject_unknown(e, where, {"name", "broker", "advertise", "subscribe"});
      ScriptedClient sc;
      sc.name = get<std::string>(e, "name", where, "");
      sc.broker = get<std::string>(e, "broker", where, "");
      if (sc.name.empty() || sc.broker.empty()) throw ConfigError(where + ": needs 'name' and 'broker'");
      if (e.contains("advertise")) sc.advertise = get<std::string>(e, "advertise", where, "");
      sc.subscribe = get<std::vector<std::string>>(e, "subscribe", where, {});
      c.clients.push_back(std::move(sc));
    }
  }
  if (j.contains("notifications")) {
    if (!j["notifications"].is_array()) throw ConfigError("notifications: expected an array");
    for (std::size_t i = 0; i < j["notifications"].size(); ++i) {
      const auto where = fmt::format("notifications[{}]", i);
      const auto& e = require_object(j["notifications"][i], where);
      reject_unknown(e, where, {"publisher", "at_ms", "payload"});
      ScriptedNotification n;
      n.publisher = get<std::string>(e, "publisher", where, "");
      n.at = ms_to_us(get<double>(e, "at_ms", where, 0.0));
      n.payload = get<std::string>(e, "payload", where, "");
      c.notifications.push_back(std::move(n));
    }
  }
  if (j.contains("congestion")) {
    if (!j["congestion"].is_array()) throw ConfigError("congestion: expected an array");
    for (std::size_t i = 0; i < j["congestion"].size(); ++i) {
      const auto where = fmt::format("congestion[{}]", i);
      const auto& e = require_object(j["congestion"][i], where);
      reject_unknown(e, where, {"from", "to", "start_ms", "end_ms", "rate", "backlog"});
      ScriptedInjection s;
      s.from = get<std::string>(e, "from", where, "");
      s.to = get<std::string>(e, "to", where, "");
      s.start = ms_to_us(get<double>(e, "start_ms", where, 0.0));
      s.end = ms_to_us(get<double>(e, "end_ms", where, 0.0));
      s.rate = get<double>(e, "rate", where, s.rate);
      s.backlog = get<std::size_t>(e, "backlog", where, 0);
      c.congestion.push_back(std::move(s));
    }
  }
  c.watch = get<std::vector<std::string>>(j, "watch", "config", {});
  validate_config(c);
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path));
  std::stringstream ss;
  ss << in.rdbuf();
  auto c = parse_config(ss.str());
  // factor files are relative to the config file
  const auto base = std::filesystem::path(path).parent_path();
  for (auto* f : {&c.af_file, &c.cf_file}) {
    if (!f->empty() && std::filesystem::path(*f).is_relative()) *f = (base / *f).lexically_normal().string();
  }
  return c;
}

std::string to_json(const ScenarioConfig& c) {
  nlohmann::ordered_json j;
  j["name"] = c.name;
  if (!c.af_file.empty()) {
    j["topology"] = {{"af", c.af_file}, {"cf", c.cf_file}};
  } else {
    j["topology"] = {{"preset", c.preset}};
  }
  j["routing"] = std::string(to_string(c.routing));
  j["seed"] = c.seed;
  j["tau"] = c.tau;
  j["t_w_ms"] = us_to_ms(c.t_w);
  j["links"] = {{"latency_ms", us_to_ms(c.links.latency)},
                {"alink_rate", c.links.alink_rate},
                {"ilink_rate", c.links.ilink_rate}};
  j["phase_gap_ms"] = us_to_ms(c.phase_gap);
  j["event_budget"] = c.event_budget;
  j["routing_log"] = c.keep_routing_log;
  if (c.workload) {
    const auto& w = *c.workload;
    j["workload"] = {{"publishers", w.publishers},     {"subscribers", w.subscribers},
                     {"notifications", w.notifications}, {"selectivity", w.selectivity},
                     {"symbols", w.symbols},             {"publish_interval_ms", us_to_ms(w.publish_interval)}};
  }
  if (c.burst) {
    const auto& b = *c.burst;
    j["burst"] = {{"notifications", b.notifications},
                  {"interval_ms", us_to_ms(b.interval)},
                  {"interested_fraction", b.interested_fraction},
                  {"hrp_host", b.hrp_host}};
  }
  if (!c.clients.empty()) {
    auto& arr = j["clients"] = nlohmann::ordered_json::array();
    for (const auto& sc : c.clients) {
      nlohmann::ordered_json e;
      e["name"] = sc.name;
      e["broker"] = sc.broker;
      if (sc.advertise) e["advertise"] = *sc.advertise;
      if (!sc.subscribe.empty()) e["subscribe"] = sc.subscribe;
      arr.push_back(std::move(e));
    }
  }
  if (!c.notifications.empty()) {
    auto& arr = j["notifications"] = nlohmann::ordered_json::array();
    for (const auto& n : c.notifications) {
      arr.push_back({{"publisher", n.publisher}, {"at_ms", us_to_ms(n.at)}, {"payload", n.payload}});
    }
  }
  if (!c.congestion.empty()) {
    auto& arr = j["congestion"] = nlohmann::ordered_json::array();
    for (const auto& s : c.congestion) {
      arr.push_back({{"from", s.from},
                     {"to", s.to},
                     {"start_ms", us_to_ms(s.start)},
                     {"end_ms", us_to_ms(s.end)},
                     {"rate", s.rate},
                     {"backlog", s.backlog}});
    }
  }
  if (!c.watch.empty()) j["watch"] = c.watch;
  return j.dump(2);
}

ScotTopology build_topology(const ScenarioConfig& c) {
  if (!c.af_file.empty()) return ScotTopology::build(load_graph_file(c.af_file), load_graph_file(c.cf_file));
  return preset_topology(c.preset);
}

void validate_config(const ScenarioConfig& c) {
  if (!(c.tau > 0)) throw ConfigError("tau must be positive");
  if (c.t_w <= 0) throw ConfigError("t_w_ms must be positive");
  if (c.phase_gap < 0) throw ConfigError("phase_gap_ms must be non-negative");
  if (!(c.links.alink_rate > 0) || !(c.links.ilink_rate > 0)) throw ConfigError("link rates must be positive");
  if (c.links.latency < 0) throw ConfigError("links.latency_ms must be non-negative");
  if (c.workload) {
    if (!(c.workload->selectivity > 0 && c.workload->selectivity <= 1)) {
      throw ConfigError("workload.selectivity must be in (0, 1]");
    }
    if (c.workload->notifications > 0 && c.workload->publishers == 0) {
      throw ConfigError("workload.notifications need at least one publisher");
    }
    if (c.workload->symbols < c.workload->publishers) throw ConfigError("workload.symbols below publishers");
  }
  if (c.burst && !(c.burst->interested_fraction >= 0 && c.burst->interested_fraction <= 1)) {
    throw ConfigError("burst.interested_fraction must be in [0, 1]");
  }
  std::set<std::string> names;
  for (const auto& sc : c.clients) {
    if (!names.insert(sc.name).second) throw ConfigError(fmt::format("duplicate client name '{}'", sc.name));
    if (sc.advertise) parse_filter(*sc.advertise);
    for (const auto& s : sc.subscribe) parse_filter(s);
  }
  for (const auto& n : c.notifications) {
    const auto it = std::find_if(c.clients.begin(), c.clients.end(),
                                 [&](const ScriptedClient& sc) { return sc.name == n.publisher; });
    if (it == c.clients.end() || !it->advertise) {
      throw ConfigError(fmt::format("notification from '{}', which is not an advertising client", n.publisher));
    }
    if (n.at < 0) throw ConfigError("notification at_ms must be non-negative");
    parse_payload(n.payload);
  }
  for (const auto& s : c.congestion) {
    if (s.end <= s.start) throw ConfigError(fmt::format("congestion {}->{}: end must follow start", s.from, s.to));
    if (!(s.rate > 0)) throw ConfigError(fmt::format("congestion {}->{}: rate must be positive", s.from, s.to));
  }
}

ScenarioResult run_scenario(const ScenarioConfig& c, TraceSink* trace) {
  validate_config(c);
  ScenarioResult r;
  r.config = c;
  r.topology = std::make_shared<const ScotTopology>(build_topology(c));
  const auto& topo = *r.topology;
  auto broker_of = [&](const std::string& name) {
    const auto id = parse_broker_id(name);
    if (!topo.contains(id)) throw ConfigError(fmt::format("unknown broker {}", name));
    return topo.index_of(id);
  };

  SimConfig sc;
  sc.broker = BrokerParams{c.routing, c.tau, c.t_w, c.keep_routing_log};
  sc.links = c.links;
  sc.event_budget = c.event_budget;
  for (const auto& w : c.watch) sc.watched.push_back(broker_of(w));
  r.sim = std::make_unique<Simulator>(topo, sc);
  auto& sim = *r.sim;
  sim.set_trace(trace);

  Workload w;
  if (c.workload) w = generate_workload(*c.workload, topo.broker_count(), c.seed);
  if (c.burst) add_burst(w, *c.burst, topo, c.seed);

  std::string fingerprint;
  auto add_client = [&](const std::string& name, BrokerIndex host) {
    if (r.clients.count(name) != 0) throw ConfigError(fmt::format("duplicate client name '{}'", name));
    const auto id = sim.add_client(name, host);
    r.clients.emplace(name, id);
    fingerprint += fmt::format("client {} {}\n", name, topo.name(host));
    return id;
  };

  std::vector<std::pair<ClientId, Filter>> advertisers;
  std::vector<std::pair<ClientId, Filter>> subscribers;
  for (const auto& s : c.clients) {
    const auto id = add_client(s.name, broker_of(s.broker));
    if (s.advertise) advertisers.emplace_back(id, parse_filter(*s.advertise));
    for (const auto& f : s.subscribe) subscribers.emplace_back(id, parse_filter(f));
  }
  std::vector<ClientId> workload_publishers;
  for (const auto& p : w.publishers) {
    const auto id = add_client(p.name, p.host);
    workload_publishers.push_back(id);
    advertisers.emplace_back(id, p.filter);
  }
  for (const auto& s : w.subscribers) subscribers.emplace_back(add_client(s.name, s.host), s.filter);

  auto snapshot = [&] { return sim.report().ims; };
  auto close_phase = [&](const char* name, SimTime start, const std::array<std::uint64_t, kMessageKindCount>& before) {
    sim.run();
    PhaseCounts p;
    p.phase = name;
    p.start = start;
    p.end = sim.now();
    const auto after = snapshot();
    for (std::size_t k = 0; k < kMessageKindCount; ++k) p.ims[k] = after[k] - before[k];
    r.phases.push_back(p);
  };

  // Advertise, then subscribe, then publish; each phase runs to quiescence.
  auto before = snapshot();
  SimTime t = 0;
  for (const auto& [id, f] : advertisers) {
    r.adverts[sim.client(id).name] = sim.advertise(id, f, t);
    fingerprint += fmt::format("adv {} {}\n", sim.client(id).name, to_string(f));
  }
  close_phase("advertise", t, before);

  before = snapshot();
  t = sim.now() + c.phase_gap;
  for (const auto& [id, f] : subscribers) {
    r.subscriptions.push_back(sim.subscribe(id, f, t));
    fingerprint += fmt::format("sub {} {}\n", sim.client(id).name, to_string(f));
  }
  close_phase("subscribe", t, before);

  before = snapshot();
  t = sim.now() + c.phase_gap;
  for (const auto& s : c.congestion) {
    sim.inject({broker_of(s.from), broker_of(s.to), t + s.start, t + s.end, s.rate, s.backlog});
    fingerprint += fmt::format("congestion {} {} {} {} {} {}\n", s.from, s.to, s.start, s.end, s.rate, s.backlog);
  }
  for (const auto& n : c.notifications) {
    const auto& pub = n.publisher;
    sim.publish(r.clients.at(pub), r.adverts.at(pub), parse_payload(n.payload), t + n.at);
    fingerprint += fmt::format("pub {} {} {}\n", pub, n.at, n.payload);
  }
  for (const auto& n : w.notifications) {
    const auto id = workload_publishers.at(n.publisher);
    const auto& name = sim.client(id).name;
    sim.publish(id, r.adverts.at(name), n.payload, t + n.offset);
    fingerprint += fmt::format("pub {} {} {}\n", name, n.offset, to_string(n.payload));
  }
  close_phase("publish", t, before);

  r.report = sim.report();
  r.workload_fingerprint = fnv1a(fingerprint);
  return r;
}

std::vector<ScenarioResult> run_batch(const std::vector<ScenarioConfig>& configs, unsigned threads) {
  std::vector<ScenarioResult> results(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (auto i = next++; i < configs.size(); i = next++) {
      try {
        results[i] = run_scenario(configs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto n = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(configs.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

std::map<NotifId, std::set<ClientId>> expected_deliveries(const ScenarioResult& r) {
  std::map<NotifId, std::set<ClientId>> out;
  for (const auto& [id, n] : r.sim->published()) {
    auto& want = out[id];
    for (const auto& [sid, s] : r.sim->subscriptions()) {
      if (matches(*n.payload, s.filter)) want.insert(s.subscriber);
    }
  }
  return out;
}

void write_summary_header(std::ostream& out) {
  out << "name,routing,seed,brokers,clusters,regions,clients,advertisements,subscriptions,notifications,"
         "ims_total";
  for (std::size_t k = 0; k < kMessageKindCount; ++k) out << ",ims_" << to_string(static_cast<MessageKind>(k));
  out << ",advertise_phase_ims,subscribe_phase_ims,publish_phase_ims,duplicate_adverts,srt_total,prt_total,"
         "srt_per_advert,prt_per_sub,deliveries,expected_deliveries,missing_deliveries,unexpected_deliveries,"
         "duplicate_deliveries,max_hops,mean_hops,delay_mean_ms,delay_p50_ms,delay_p95_ms,delay_max_ms,"
         "max_q_len,max_q_len_watched,forced_congested_sends,dedup_suppressed,dropped_notifications,"
         "hop_limit_drops,lst_mirror_violations,in_flight,events,end_time_ms\n";
}

void write_summary_row(std::ostream& out, const ScenarioResult& r) {
  const auto& m = r.report;
  const auto& topo = *r.topology;
  const auto adverts = r.sim->advertisements().size();
  const auto subs = r.subscriptions.size();
  out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}", r.config.name, to_string(r.config.routing), r.config.seed,
                     topo.broker_count(), topo.cluster_count(), topo.region_count(), r.clients.size(), adverts, subs,
                     m.notifications.size(), m.total_ims());
  for (auto v : m.ims) out << ',' << v;
  for (const char* phase : {"advertise", "subscribe", "publish"}) {
    std::uint64_t total = 0;
    for (const auto& p : r.phases) {
      if (p.phase != phase) continue;
      for (std::size_t k = 0; k < kMessageKindCount; ++k) {
        if (static_cast<MessageKind>(k) != MessageKind::Background) total += p.ims[k];
      }
    }
    out << ',' << total;
  }
  std::vector<double> hops;
  std::vector<double> delays;
  for (const auto& d : m.deliveries) {
    hops.push_back(d.hops);
    delays.push_back(us_to_ms(d.delay));
  }
  const auto hop_summary = summarize(hops);
  const auto delay_summary = summarize(delays);
  std::uint64_t max_q = 0;
  for (const auto& [link, q] : m.max_q_len) max_q = std::max(max_q, q);
  const auto check = check_deliveries(r);
  out << fmt::format(",{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                     m.counters.duplicate_adverts, m.srt_total(), m.prt_total(),
                     fmt_double(adverts ? static_cast<double>(m.srt_total()) / static_cast<double>(adverts) : 0.0),
                     fmt_double(subs ? static_cast<double>(m.prt_total()) / static_cast<double>(subs) : 0.0),
                     m.deliveries.size(), check.expected, check.missing, check.unexpected, m.duplicate_deliveries(),
                     static_cast<std::uint64_t>(hop_summary.max), fmt_double(hop_summary.mean),
                     fmt_double(delay_summary.mean), fmt_double(delay_summary.p50), fmt_double(delay_summary.p95),
                     fmt_double(delay_summary.max), max_q, watched_max_queue(r), m.counters.forced_congested_sends,
                     m.counters.dedup_suppressed, m.counters.dropped_notifications, m.counters.hop_limit_drops,
                     m.lst_mirror_violations,
                     m.in_flight, m.events, fmt_double(us_to_ms(m.end_time)));
}

void write_tables_csv(std::ostream& out, const ScenarioResult& r) {
  const auto& topo = *r.topology;
  out << "broker,cluster,region,class,srt_size,prt_size,max_q_len\n";
  for (BrokerIndex b = 0; b < topo.broker_count(); ++b) {
    out << fmt::format("\"{}\",{},{},{},{},{},{}\n", topo.name(b), topo.cluster_of(b), topo.id(b).af,
                       to_string(topo.neighbours(b).broker_class), r.report.srt_sizes.at(b),
                       r.report.prt_sizes.at(b), r.report.max_queue_at(b));
  }
}

void write_deliveries_csv(std::ostream& out, const ScenarioResult& r) {
  out << "notification,publisher,subscriber,host,hops,delay_ms\n";
  for (const auto& d : r.report.deliveries) {
    const auto& rec = r.report.notifications.at(d.notif);
    out << fmt::format("{},{},{},\"{}\",{},{}\n", d.notif.str(), r.sim->client(rec.publisher).name,
                       r.sim->client(d.client).name, r.topology->name(d.host), d.hops, fmt_double(us_to_ms(d.delay)));
  }
}

void write_queues_csv(std::ostream& out, const ScenarioResult& r) {
  out << "window_start_ms,from,to,link,max_q_len\n";
  for (const auto& s : r.report.queue_samples) {
    out << fmt::format("{},\"{}\",\"{}\",{},{}\n", fmt_double(us_to_ms(s.window_start)), r.topology->name(s.from),
                       r.topology->name(s.to), to_string(r.topology->link_kind(s.from, s.to)), s.max_q_len);
  }
}

void write_outputs(const std::string& dir, const ScenarioResult& r) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* file) {
    std::ofstream out(std::filesystem::path(dir) / file);
    if (!out) throw std::runtime_error(fmt::format("cannot write {}/{}", dir, file));
    return out;
  };
  {
    auto out = open("summary.csv");
    write_summary_header(out);
    write_summary_row(out, r);
  }
  {
    auto out = open("tables.csv");
    write_tables_csv(out, r);
  }
  {
    auto out = open("deliveries.csv");
    write_deliveries_csv(out, r);
  }
  {
    auto out = open("queues.csv");
    write_queues_csv(out, r);
  }
}

Comparison compare_runs(const ScenarioResult& a, const ScenarioResult& b) {
  if (a.workload_fingerprint != b.workload_fingerprint) {
    throw ConfigError(fmt::format("runs used different workloads ({} vs {})", a.workload_fingerprint,
                                  b.workload_fingerprint));
  }
  Comparison c;
  c.delivered_sets_equal = a.report.delivered_sets() == b.report.delivered_sets();
  auto row = [&](const std::string& metric, double x, double y) {
    c.lines.push_back(fmt::format("{},{},{},{}", metric, fmt_number(x), fmt_number(y), fmt_number(y - x)));
  };
  auto d = [](auto v) { return static_cast<double>(v); };
  row("ims_total", d(a.report.total_ims()), d(b.report.total_ims()));
  for (std::size_t k = 0; k < kMessageKindCount; ++k) {
    row(fmt::format("ims_{}", to_string(static_cast<MessageKind>(k))), d(a.report.ims[k]), d(b.report.ims[k]));
  }
  row("srt_total", d(a.report.srt_total()), d(b.report.srt_total()));
  row("prt_total", d(a.report.prt_total()), d(b.report.prt_total()));
  std::uint64_t qa = 0;
  std::uint64_t qb = 0;
  for (const auto& [l, q] : a.report.max_q_len) qa = std::max(qa, q);
  for (const auto& [l, q] : b.report.max_q_len) qb = std::max(qb, q);
  row("max_q_len", d(qa), d(qb));
  row("max_q_len_watched", d(watched_max_queue(a)), d(watched_max_queue(b)));
  auto delays = [](const ScenarioResult& r) {
    std::vector<double> v;
    for (const auto& x : r.report.deliveries) v.push_back(us_to_ms(x.delay));
    return summarize(v);
  };
  const auto da = delays(a);
  const auto db = delays(b);
  row("delay_mean_ms", da.mean, db.mean);
  row("delay_p50_ms", da.p50, db.p50);
  row("delay_p95_ms", da.p95, db.p95);
  row("delay_max_ms", da.max, db.max);
  row("deliveries", d(a.report.deliveries.size()), d(b.report.deliveries.size()));
  row("forced_congested_sends", d(a.report.counters.forced_congested_sends),
      d(b.report.counters.forced_congested_sends));
  row("delivered_sets_equal", c.delivered_sets_equal ? 1 : 0, c.delivered_sets_equal ? 1 : 0);
  return c;
}

void write_comparison_csv(std::ostream& out, const Comparison& c) {
  out << "metric,a,b,delta\n";
  for (const auto& l : c.lines) out << l << '\n';
}

}  // namespace octopia
