#include <doctest.h>

#include "octopia/presets.hpp"
#include "octopia/simulator.hpp"
#include "octopia/trace.hpp"

using namespace octopia;

TEST_CASE("empty run") {
  const auto topo = preset_topology("fig3");
  Simulator sim(topo, {});
  CHECK(sim.run() == 0);
  const auto m = sim.report();
  CHECK(m.total_sent() == 0);
  CHECK(m.events == 0);
  CHECK(m.in_flight == 0);
}

TEST_CASE("service time and latency") {
  const auto topo = preset_topology("fig7");
  SimConfig c;
  c.links.latency = 3 * kMillisecond;
  c.links.ilink_rate = 0.5;  // 2 ms per message
  Simulator sim(topo, c);
  const auto p = sim.add_client("P", topo.index_of(parse_broker_id("(b,1)")));
  sim.advertise(p, parse_filter("x > 0"), 0);
  // two iLink copies, served in parallel on separate queues
  CHECK(sim.run() == 5 * kMillisecond);
}

TEST_CASE("injection degrades a link and stuffs its queue") {
  const auto topo = preset_topology("fig7");
  Simulator sim(topo, {});
  const auto from = topo.index_of(parse_broker_id("(b,2)"));
  const auto to = topo.index_of(parse_broker_id("(b,0)"));
  sim.inject({from, to, 0, 100 * kMillisecond, 0.1, 5});
  sim.run();
  const auto m = sim.report();
  CHECK(m.ims_of(MessageKind::Background) == 5);
  CHECK(m.total_ims() == 0);
  CHECK(m.max_q_len.at({from, to}) == 5);
  CHECK(m.lst_mirror_violations == 0);
  CHECK(m.received == 5);
  // the last event is the end of the degradation window
  CHECK(m.end_time == 100 * kMillisecond);
}

TEST_CASE("injection errors") {
  const auto topo = preset_topology("fig7");
  Simulator sim(topo, {});
  const auto a = topo.index_of(parse_broker_id("(a,0)"));
  const auto b = topo.index_of(parse_broker_id("(b,0)"));
  const auto c = topo.index_of(parse_broker_id("(c,0)"));
  CHECK_THROWS_AS(sim.inject({a, c, 0, 10, 0.1, 0}), SimulationError);
  CHECK_THROWS_AS(sim.inject({a, b, 10, 10, 0.1, 0}), SimulationError);
  CHECK_THROWS_AS(sim.inject({a, b, 0, 10, 50.0, 0}), SimulationError);
  CHECK_THROWS_AS(sim.inject({a, b, 0, 10, 0.0, 0}), SimulationError);
}

TEST_CASE("event budget trips") {
  const auto topo = preset_topology("fig10");
  SimConfig c;
  c.event_budget = 10;
  c.broker.mode = RoutingMode::TidStatic;
  Simulator sim(topo, c);
  sim.advertise(sim.add_client("P", 0), parse_filter("x > 0"), 0);
  CHECK_THROWS_AS(sim.run(), SimulationError);
}

TEST_CASE("client actions cannot go back in time") {
  const auto topo = preset_topology("fig3");
  Simulator sim(topo, {});
  const auto p = sim.add_client("P", 0);
  sim.advertise(p, parse_filter("x > 0"), 5 * kMillisecond);
  sim.run();
  CHECK_THROWS_AS(sim.advertise(p, parse_filter("x > 0"), 0), SimulationError);
  CHECK_THROWS_AS(sim.add_client("Q", 99), SimulationError);
}

TEST_CASE("conservation and mirror under load") {
  const auto topo = preset_topology("fig3");
  SimConfig c;
  c.links.ilink_rate = 1;
  Simulator sim(topo, c);
  const auto p = sim.add_client("P", topo.index_of(parse_broker_id("(b,0)")));
  const auto a = sim.advertise(p, parse_filter("x > 0"), 0);
  for (BrokerIndex b = 0; b < topo.broker_count(); b += 2) {
    sim.subscribe(sim.add_client("S" + std::to_string(b), b), parse_filter("x > 0"), kMillisecond);
  }
  sim.run();
  for (int i = 0; i < 50; ++i) sim.publish(p, a, parse_payload("x = 1"), sim.now() + i * 100);
  sim.run();
  const auto m = sim.report();
  CHECK(m.total_sent() == m.received + m.in_flight);
  CHECK(m.in_flight == 0);
  CHECK(m.lst_mirror_violations == 0);
  CHECK(m.deliveries.size() == 50 * 9);
}

TEST_CASE("trace records events") {
  const auto topo = preset_topology("fig3");
  Simulator sim(topo, {});
  MemoryTrace trace(2);
  sim.set_trace(&trace);
  const auto p = sim.add_client("P", 0);
  sim.advertise(p, parse_filter("x > 0"), 0);
  sim.run();
  bool saw_store = false;
  std::size_t enqueues = 0;
  for (const auto& e : trace.events) {
    saw_store |= e.event == "srt_store";
    enqueues += e.event == "enqueue";
  }
  CHECK(saw_store);
  CHECK(enqueues == 2);
  CHECK_FALSE(to_json_line(trace.events.front()).empty());
}
