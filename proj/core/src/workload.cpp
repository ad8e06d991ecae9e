#include "octopia/workload.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace octopia {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below(0)");
  // Rejection sampling keeps the result unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  for (;;) {
    const auto x = engine_();
    if (x < limit) return x % n;
  }
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

const std::vector<std::string>& stock_attributes() {
  static const std::vector<std::string> attrs = {"symbol", "exchange", "price", "volume", "open",
                                                 "high",   "low",      "close", "bid",    "ask"};
  return attrs;
}

std::vector<std::string> symbol_universe(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(fmt::format("S{:03}", i));
  return out;
}

Filter stock_advertisement(const std::string& symbol) {
  Filter f{make_predicate("symbol", Op::Eq, symbol), make_predicate("price", Op::Between, 0.0, 100.0),
           make_predicate("volume", Op::Between, 0.0, 1e6)};
  for (const char* a : {"open", "high", "low", "close", "bid", "ask"}) {
    f.push_back(make_predicate(a, Op::Between, 0.0, 100.0));
  }
  return f;
}

Payload make_quote(Rng& rng, const std::string& symbol) {
  const double price = rng.uniform(0.0, 100.0);
  auto near = [&] { return std::clamp(price + rng.uniform(-1.0, 1.0), 0.0, 100.0); };
  const double open = near();
  const double close = near();
  Payload p;
  p["symbol"] = symbol;
  p["exchange"] = std::string(rng.below(2) == 0 ? "NYSE" : "NASDAQ");
  p["price"] = price;
  p["volume"] = static_cast<double>(rng.below(1000000));
  p["open"] = open;
  p["close"] = close;
  p["high"] = std::max({open, close, price});
  p["low"] = std::min({open, close, price});
  p["bid"] = std::max(0.0, price - 0.01);
  p["ask"] = std::min(100.0, price + 0.01);
  return p;
}

Workload generate_workload(const WorkloadSpec& spec, std::size_t broker_count, std::uint64_t seed) {
  if (!(spec.selectivity > 0 && spec.selectivity <= 1)) {
    throw std::invalid_argument("selectivity must be in (0, 1]");
  }
  if (broker_count == 0) throw std::invalid_argument("workload needs at least one broker");
  if (spec.publishers == 0 && spec.notifications > 0) {
    throw std::invalid_argument("notifications need at least one publisher");
  }
  if (spec.symbols < spec.publishers) throw std::invalid_argument("fewer symbols than publishers");

  Rng rng(seed);
  Workload w;

  // Pool of distinct advertised symbols.
  auto universe = symbol_universe(spec.symbols);
  const auto pool_size = std::max<std::size_t>(
      1, std::min(spec.publishers, static_cast<std::size_t>(std::floor(1.0 / spec.selectivity + 1e-9))));
  for (std::size_t i = 0; i < pool_size && i < universe.size(); ++i) {
    std::swap(universe[i], universe[i + rng.below(universe.size() - i)]);
  }
  universe.resize(std::min(pool_size, universe.size()));

  for (std::size_t i = 0; i < spec.publishers; ++i) {
    PublisherPlan p;
    p.name = fmt::format("P{}", i + 1);
    p.host = rng.below(broker_count);
    p.symbol = universe[i % universe.size()];
    p.filter = stock_advertisement(p.symbol);
    w.publishers.push_back(std::move(p));
  }

  const double width = 100.0 * spec.selectivity * static_cast<double>(universe.size());
  for (std::size_t i = 0; i < spec.subscribers; ++i) {
    SubscriberPlan s;
    s.name = fmt::format("S{}", i + 1);
    s.host = rng.below(broker_count);
    const auto& symbol = universe[rng.below(universe.size())];
    const double lo = rng.uniform(0.0, 100.0 - width);
    s.filter = {make_predicate("symbol", Op::Eq, symbol),
                make_predicate("price", Op::Between, lo, lo + width)};
    w.subscribers.push_back(std::move(s));
  }

  for (std::size_t i = 0; i < spec.notifications; ++i) {
    NotificationPlan n;
    n.publisher = rng.below(spec.publishers);
    n.offset = static_cast<SimTime>(i) * spec.publish_interval;
    n.payload = make_quote(rng, w.publishers[n.publisher].symbol);
    w.notifications.push_back(std::move(n));
  }
  return w;
}

void add_burst(Workload& w, const BurstSpec& spec, const ScotTopology& topo, std::uint64_t seed) {
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const std::string symbol = "HRP";

  PublisherPlan hrp;
  hrp.name = "HRP";
  hrp.host = spec.hrp_host.empty() ? rng.below(topo.broker_count())
                                   : topo.index_of(parse_broker_id(spec.hrp_host));
  hrp.symbol = symbol;
  hrp.filter = stock_advertisement(symbol);
  const auto hrp_index = w.publishers.size();
  w.publishers.push_back(hrp);

  const auto clusters = topo.cluster_count();
  auto interested = static_cast<std::size_t>(
      std::llround(spec.interested_fraction * static_cast<double>(w.subscribers.size())));
  interested = std::max(interested, clusters);
  for (std::size_t i = 0; i < interested; ++i) {
    SubscriberPlan s;
    if (i < w.subscribers.size()) s.name = w.subscribers[i].name;
    else s.name = fmt::format("S{}", w.subscribers.size() + 1);
    const auto ci = i % clusters;
    s.host = topo.broker_at(rng.below(topo.region_count()), ci);
    s.filter = {make_predicate("symbol", Op::Eq, symbol),
                make_predicate("price", Op::Between, 0.0, 100.0)};
    if (i < w.subscribers.size()) w.subscribers[i] = std::move(s);
    else w.subscribers.push_back(std::move(s));
  }

  for (std::size_t i = 0; i < spec.notifications; ++i) {
    NotificationPlan n;
    n.publisher = hrp_index;
    n.offset = static_cast<SimTime>(i) * spec.interval;
    n.payload = make_quote(rng, symbol);
    w.notifications.push_back(std::move(n));
  }
  std::stable_sort(w.notifications.begin(), w.notifications.end(),
                   [](const auto& a, const auto& b) { return a.offset < b.offset; });
}

}  // namespace octopia
