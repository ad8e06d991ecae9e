#include <doctest.h>

#include "octopia/presets.hpp"
#include "octopia/scenario.hpp"
#include "octopia/simulator.hpp"
#include "octopia/tid_broker.hpp"
#include "oracles.hpp"

using namespace octopia;

namespace {

SimConfig tid_config() {
  SimConfig c;
  c.broker.mode = RoutingMode::TidStatic;
  return c;
}

}  // namespace

TEST_CASE("flooding reaches every broker and discards duplicates") {
  const auto topo = preset_topology("fig1");
  Simulator sim(topo, tid_config());
  const auto p = sim.add_client("P", topo.index_of(parse_broker_id("(a,0)")));
  const auto a = sim.advertise(p, parse_filter("x between 0 10"), 0);
  sim.run();
  const auto m = sim.report();
  for (BrokerIndex b = 0; b < topo.broker_count(); ++b) CHECK(sim.node(b).stores_advertisement(a));
  CHECK(m.counters.duplicate_adverts > 0);
  // every message either stored a copy or was a discarded duplicate
  CHECK(m.ims_of(MessageKind::Advertisement) == (topo.broker_count() - 1) + m.counters.duplicate_adverts);
  CHECK(m.ims_of(MessageKind::Advertisement) == 2 * topo.overlay().size() - (topo.broker_count() - 1));
}

TEST_CASE("flooding a tree produces no duplicates") {
  const auto topo = ScotTopology::build(path_graph({"a", "b", "c", "d"}), complete_graph(1));
  Simulator sim(topo, tid_config());
  const auto p = sim.add_client("P", 1);
  sim.advertise(p, parse_filter("x > 0"), 0);
  sim.run();
  CHECK(sim.report().counters.duplicate_adverts == 0);
  CHECK(sim.report().ims_of(MessageKind::Advertisement) == 3);
}

TEST_CASE("fig3 flood counts are deterministic") {
  auto once = [] {
    const auto topo = preset_topology("fig3");
    Simulator sim(topo, tid_config());
    const auto p = sim.add_client("P", topo.index_of(parse_broker_id("(b,1)")));
    sim.advertise(p, parse_filter("x > 0"), 0);
    sim.run();
    return sim.report();
  };
  const auto a = once();
  const auto b = once();
  CHECK(a.ims == b.ims);
  CHECK(a.counters.duplicate_adverts == b.counters.duplicate_adverts);
  CHECK(a.ims_of(MessageKind::Advertisement) == 2 * 33 - 17);
  CHECK(a.srt_total() == 18);
}

TEST_CASE("subscription binds to every matching tree") {
  const auto topo = preset_topology("fig1");
  Simulator sim(topo, tid_config());
  const auto p1 = sim.add_client("P1", topo.index_of(parse_broker_id("(a,0)")));
  const auto p2 = sim.add_client("P2", topo.index_of(parse_broker_id("(c,1)")));
  const auto a1 = sim.advertise(p1, parse_filter("x between 0 10"), 0);
  const auto a2 = sim.advertise(p2, parse_filter("x between 5 20"), 0);
  sim.run();
  const auto host = topo.index_of(parse_broker_id("(b,0)"));
  const auto s = sim.add_client("S", host);
  const auto sid = sim.subscribe(s, parse_filter("x between 6 8"), sim.now() + kMillisecond);
  const auto none = sim.subscribe(s, parse_filter("x > 100"), sim.now() + kMillisecond);
  sim.run();
  const auto* tb = sim.tid_broker(host);
  REQUIRE(tb != nullptr);
  const auto& local = tb->prt().at({sid, Hop::client(s)});
  CHECK(local.bound_tids.size() == 2);
  CHECK(local.bound_tids.count(sim.tid_broker(topo.index_of(parse_broker_id("(a,0)")))->tid_of(a1)) == 1);
  CHECK(local.bound_tids.count(sim.tid_broker(topo.index_of(parse_broker_id("(c,1)")))->tid_of(a2)) == 1);
  CHECK(tb->prt().at({none, Hop::client(s)}).bound_tids.empty());
  // the unmatched subscription never left its host
  std::size_t holders = 0;
  for (BrokerIndex b = 0; b < topo.broker_count(); ++b) holders += sim.node(b).stores_subscription(none);
  CHECK(holders == 1);
}

TEST_CASE("notifications follow the bound trees") {
  const auto topo = preset_topology("fig3");
  Simulator sim(topo, tid_config());
  const auto p = sim.add_client("P", topo.index_of(parse_broker_id("(a,0)")));
  const auto a = sim.advertise(p, parse_filter("x between 0 10"), 0);
  sim.run();
  const auto s1 = sim.add_client("S1", topo.index_of(parse_broker_id("(f,2)")));
  const auto s2 = sim.add_client("S2", topo.index_of(parse_broker_id("(c,0)")));
  sim.subscribe(s1, parse_filter("x >= 3"), sim.now() + kMillisecond);
  sim.subscribe(s2, parse_filter("x >= 8"), sim.now() + kMillisecond);
  sim.run();
  const auto n1 = sim.publish(p, a, parse_payload("x = 5"), sim.now() + kMillisecond);
  const auto n2 = sim.publish(p, a, parse_payload("x = 9"), sim.now() + 2 * kMillisecond);
  const auto n3 = sim.publish(p, a, parse_payload("x = 1"), sim.now() + 3 * kMillisecond);
  sim.run();
  const auto got = sim.report().delivered_sets();
  CHECK(got.at(n1) == std::set<ClientId>{s1});
  CHECK(got.at(n2) == std::set<ClientId>{s1, s2});
  CHECK(got.at(n3).empty());
  CHECK(got == oracle::expected_deliveries(sim));
  CHECK(sim.report().duplicate_deliveries() == 0);
}

TEST_CASE("late advertisement picks up earlier subscriptions") {
  const auto topo = preset_topology("fig3");
  Simulator sim(topo, tid_config());
  const auto s = sim.add_client("S", topo.index_of(parse_broker_id("(e,1)")));
  sim.subscribe(s, parse_filter("x > 0"), 0);
  sim.run();
  const auto p = sim.add_client("P", topo.index_of(parse_broker_id("(b,2)")));
  const auto a = sim.advertise(p, parse_filter("x between 0 10"), sim.now() + kMillisecond);
  sim.run();
  const auto n = sim.publish(p, a, parse_payload("x = 4"), sim.now() + kMillisecond);
  sim.run();
  CHECK(sim.report().delivered_sets().at(n) == std::set<ClientId>{s});
}

TEST_CASE("unsubscribe retraces the forwarded paths") {
  const auto topo = preset_topology("fig3");
  Simulator sim(topo, tid_config());
  const auto p = sim.add_client("P", topo.index_of(parse_broker_id("(a,0)")));
  const auto a = sim.advertise(p, parse_filter("x between 0 10"), 0);
  sim.run();
  const auto s = sim.add_client("S", topo.index_of(parse_broker_id("(f,2)")));
  const auto sid = sim.subscribe(s, parse_filter("x >= 3"), sim.now() + kMillisecond);
  sim.run();
  CHECK(sim.report().prt_total() > 1);
  sim.unsubscribe(s, sid, sim.now() + kMillisecond);
  sim.run();
  CHECK(sim.report().prt_total() == 0);
  const auto n = sim.publish(p, a, parse_payload("x = 4"), sim.now() + kMillisecond);
  sim.run();
  CHECK(sim.report().delivered_sets().at(n).empty());
  CHECK(sim.report().ims_of(MessageKind::Notification) == 0);
}

TEST_CASE("tree ids") {
  CHECK(TidBroker::make_tid(3, 7) == ((std::uint64_t{3} << 32) | 7));
  CHECK(TidBroker::make_tid(0, 1) != TidBroker::make_tid(1, 1));
}
