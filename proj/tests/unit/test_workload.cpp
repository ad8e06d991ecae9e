#include <doctest.h>

#include <set>

#include "octopia/presets.hpp"
#include "octopia/workload.hpp"
#include "oracles.hpp"

using namespace octopia;

TEST_CASE("rng helpers stay in range") {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    CHECK(rng.below(7) < 7);
    const double u = rng.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  Rng a(99);
  Rng b(99);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("quotes carry ten attributes and conform to the advertisement") {
  Rng rng(4);
  CHECK(stock_attributes().size() == 10);
  for (int i = 0; i < 200; ++i) {
    const auto q = make_quote(rng, "S001");
    CHECK(q.size() == 10);
    for (const auto& a : stock_attributes()) CHECK(q.count(a) == 1);
    CHECK(oracle::matches(q, stock_advertisement("S001")));
    CHECK_FALSE(oracle::matches(q, stock_advertisement("S002")));
  }
  CHECK(symbol_universe(3) == std::vector<std::string>{"S000", "S001", "S002"});
}

TEST_CASE("same seed, same workload") {
  WorkloadSpec s;
  const auto a = generate_workload(s, 18, 5);
  const auto b = generate_workload(s, 18, 5);
  const auto c = generate_workload(s, 18, 6);
  REQUIRE(a.subscribers.size() == b.subscribers.size());
  for (std::size_t i = 0; i < a.subscribers.size(); ++i) {
    CHECK(a.subscribers[i].host == b.subscribers[i].host);
    CHECK(a.subscribers[i].filter == b.subscribers[i].filter);
  }
  for (std::size_t i = 0; i < a.notifications.size(); ++i) CHECK(a.notifications[i].payload == b.notifications[i].payload);
  bool differs = false;
  for (std::size_t i = 0; i < a.subscribers.size(); ++i) differs |= a.subscribers[i].filter != c.subscribers[i].filter;
  CHECK(differs);
}

TEST_CASE("empirical selectivity is near the target") {
  for (double s : {0.02, 0.05, 0.1}) {
    CAPTURE(s);
    WorkloadSpec spec;
    spec.publishers = 10;
    spec.subscribers = 400;
    spec.notifications = 2000;
    spec.selectivity = s;
    const auto w = generate_workload(spec, 70, 11);
    std::size_t hits = 0;
    for (const auto& n : w.notifications) {
      for (const auto& sub : w.subscribers) hits += oracle::matches(n.payload, sub.filter);
    }
    const double measured = static_cast<double>(hits) / static_cast<double>(w.notifications.size() * w.subscribers.size());
    CHECK(measured == doctest::Approx(s).epsilon(0.15));
  }
}

TEST_CASE("every subscription overlaps some advertisement") {
  const auto w = generate_workload({}, 18, 2);
  for (const auto& sub : w.subscribers) {
    bool any = false;
    for (const auto& p : w.publishers) any |= oracle::overlaps(p.filter, sub.filter);
    CHECK(any);
  }
}

TEST_CASE("burst re-homes interested subscribers across all clusters") {
  const auto topo = preset_topology("fig10");
  WorkloadSpec spec;
  spec.subscribers = 500;
  spec.notifications = 0;
  auto w = generate_workload(spec, topo.broker_count(), 7);
  BurstSpec b;
  b.notifications = 300;
  b.hrp_host = "(G,0)";
  add_burst(w, b, topo, 7);
  const auto& hrp = w.publishers.back();
  CHECK(hrp.name == "HRP");
  CHECK(topo.name(hrp.host) == "(G,0)");
  CHECK(w.notifications.size() == 300);
  std::set<ClusterIndex> clusters;
  std::size_t interested = 0;
  for (const auto& sub : w.subscribers) {
    if (!oracle::matches(w.notifications.front().payload, sub.filter)) continue;
    ++interested;
    clusters.insert(topo.cluster_of(sub.host));
  }
  CHECK(interested == 10);
  CHECK(clusters.size() == 5);
  for (const auto& n : w.notifications) {
    CHECK(n.publisher == w.publishers.size() - 1);
    std::size_t hit = 0;
    for (const auto& sub : w.subscribers) hit += oracle::matches(n.payload, sub.filter);
    CHECK(hit == interested);
  }
}

TEST_CASE("invalid specs") {
  WorkloadSpec s;
  s.selectivity = 0;
  CHECK_THROWS(generate_workload(s, 10, 1));
  s.selectivity = 1.5;
  CHECK_THROWS(generate_workload(s, 10, 1));
  s = {};
  s.publishers = 0;
  CHECK_THROWS(generate_workload(s, 10, 1));
  s = {};
  CHECK_THROWS(generate_workload(s, 0, 1));
}
