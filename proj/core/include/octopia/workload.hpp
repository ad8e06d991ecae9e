#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "octopia/filter.hpp"
#include "octopia/messages.hpp"
#include "octopia/scot.hpp"

namespace octopia {

/// mt19937_64 with hand-rolled uniform helpers, so sequences do not depend
/// on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [0, 1).
  double unit();
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::mt19937_64 engine_;
};

/// The ten attributes of a stock quote.
const std::vector<std::string>& stock_attributes();
/// "S000", "S001", ...
std::vector<std::string> symbol_universe(std::size_t n);

/// Advertisement filter for a publisher of quotes on `symbol`.
Filter stock_advertisement(const std::string& symbol);
/// A quote on `symbol` with price uniform in [0, 100).
Payload make_quote(Rng& rng, const std::string& symbol);

struct WorkloadSpec {
  std::size_t publishers = 10;
  std::size_t subscribers = 50;
  std::size_t notifications = 500;
  double selectivity = 0.02;
  std::size_t symbols = 500;
  SimTime publish_interval = kMillisecond;
};

struct PublisherPlan {
  std::string name;
  BrokerIndex host = 0;
  std::string symbol;
  Filter filter;
};

struct SubscriberPlan {
  std::string name;
  BrokerIndex host = 0;
  Filter filter;
};

struct NotificationPlan {
  std::size_t publisher = 0;  // index into Workload::publishers
  SimTime offset = 0;         // from the start of the publishing phase
  Payload payload;
};

struct Workload {
  std::vector<PublisherPlan> publishers;
  std::vector<SubscriberPlan> subscribers;
  std::vector<NotificationPlan> notifications;
};

/// Random placement over all brokers. Subscriptions pick a symbol from the
/// pool of K = min(publishers, floor(1/s)) advertised symbols and a price
/// window of width 100*s*K, so a random notification matches a random
/// subscription with probability s.
Workload generate_workload(const WorkloadSpec& spec, std::size_t broker_count, std::uint64_t seed);

struct BurstSpec {
  std::size_t notifications = 2000;
  SimTime interval = 400;  // microseconds between HRP notifications
  double interested_fraction = 0.02;
  std::string hrp_host;  // broker id; empty = random
};

/// Adds one high-rate publisher (appended last) and its burst to `w`. The
/// interested subscribers (interested_fraction of the existing ones, at
/// least one per cluster) are re-homed so every cluster is a target and
/// their filters match every HRP notification. Other subscribers keep
/// filters on symbols that never overlap the HRP.
void add_burst(Workload& w, const BurstSpec& spec, const ScotTopology& topo, std::uint64_t seed);

}  // namespace octopia
