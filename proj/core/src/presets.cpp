#include "octopia/presets.hpp"

#include <fmt/format.h>

namespace octopia {

namespace {

Graph h_graph() {
  return Graph::build({"a", "b", "c", "d", "e", "f"},
                      {{"a", "b"}, {"b", "c"}, {"b", "d"}, {"d", "e"}, {"e", "f"}});
}

// Four "legs" hang off each of the inner path F-G-H-I.
Graph fig10_tree() {
  std::vector<std::string> labels;
  for (char c = 'A'; c <= 'N'; ++c) labels.emplace_back(1, c);
  return Graph::build(labels, {{"A", "F"}, {"B", "G"}, {"C", "H"}, {"D", "I"}, {"E", "F"},
                               {"F", "G"}, {"G", "H"}, {"H", "I"}, {"I", "J"}, {"K", "F"},
                               {"L", "G"}, {"M", "H"}, {"N", "I"}});
}

ScriptedClient client(std::string name, std::string broker, std::optional<std::string> adv,
                      std::vector<std::string> subs = {}) {
  return ScriptedClient{std::move(name), std::move(broker), std::move(adv), std::move(subs)};
}

ScenarioConfig scripted(std::string name, std::string preset, RoutingMode routing) {
  ScenarioConfig c;
  c.name = std::move(name);
  c.preset = std::move(preset);
  c.routing = routing;
  c.keep_routing_log = true;
  return c;
}

// One publisher at (b,2) and four subscribers; every subscriber wants every
// notification. Overloads are background backlogs on slowed links.
ScenarioConfig fig7(char variant, RoutingMode routing) {
  auto c = scripted(fmt::format("fig7{}", variant), "fig7", routing);
  c.clients.push_back(client("P", "(b,2)", "x between 0 10"));
  if (variant == 'd') {
    c.clients.push_back(client("S1", "(a,0)", std::nullopt, {"x >= 0"}));
    c.clients.push_back(client("S2", "(c,1)", std::nullopt, {"x >= 0"}));
    c.clients.push_back(client("S3", "(c,2)", std::nullopt, {"x >= 0"}));
    c.clients.push_back(client("S4", "(c,2)", std::nullopt, {"x >= 0"}));
  } else {
    c.clients.push_back(client("S1", "(c,0)", std::nullopt, {"x >= 0"}));
    c.clients.push_back(client("S2", "(c,1)", std::nullopt, {"x >= 0"}));
    c.clients.push_back(client("S3", "(a,2)", std::nullopt, {"x >= 0"}));
    c.clients.push_back(client("S4", "(c,2)", std::nullopt, {"x >= 0"}));
  }
  c.notifications.push_back({"P", 5 * kMillisecond, "x = 5"});

  const SimTime end = 10'000 * kMillisecond;
  auto overload = [&](std::string from, std::string to, std::size_t backlog) {
    c.congestion.push_back({std::move(from), std::move(to), 0, end, 0.001, backlog});
  };
  switch (variant) {
    case 'a':
      overload("(b,2)", "(b,0)", 20);
      break;
    case 'b':
      overload("(b,2)", "(b,0)", 20);
      overload("(b,2)", "(b,1)", 20);
      overload("(b,2)", "(a,2)", 1);  // light traffic, below the threshold
      break;
    case 'c':
      overload("(b,2)", "(b,0)", 20);
      overload("(b,1)", "(b,0)", 20);
      overload("(c,1)", "(c,0)", 20);
      break;
    case 'd':
      overload("(b,2)", "(b,0)", 25);
      overload("(b,2)", "(b,1)", 20);
      overload("(b,2)", "(c,2)", 20);
      break;
    default:
      throw ConfigError(fmt::format("unknown fig7 variant '{}'", variant));
  }
  c.watch = {"(b,2)"};
  return c;
}

}  // namespace

std::vector<std::string> preset_names() { return {"fig1", "fig3", "fig7", "fig10"}; }

Graph preset_acyclic_factor(std::string_view name) {
  if (name == "fig1") return path_graph({"a", "b", "c"});
  if (name == "fig3") return h_graph();
  if (name == "fig7") return path_graph({"a", "b", "c"});
  if (name == "fig10") return fig10_tree();
  throw ConfigError(fmt::format("unknown topology preset '{}' (fig1, fig3, fig7, fig10)", name));
}

Graph preset_connectivity_factor(std::string_view name) {
  if (name == "fig1") return complete_graph(2);
  if (name == "fig3" || name == "fig7") return complete_graph(3);
  if (name == "fig10") return complete_graph(5);
  throw ConfigError(fmt::format("unknown topology preset '{}' (fig1, fig3, fig7, fig10)", name));
}

ScotTopology preset_topology(std::string_view name) {
  return ScotTopology::build(preset_acyclic_factor(name), preset_connectivity_factor(name));
}

std::vector<std::string> scenario_names() {
  return {"fig5", "fig6", "fig7a", "fig7b", "fig7c", "fig7d", "fig8", "burst"};
}

ScenarioConfig scenario_preset(std::string_view name, RoutingMode routing) {
  if (name == "fig5" || name == "fig6") {
    auto c = scripted(std::string(name), "fig3", routing);
    c.clients.push_back(client("P1", "(a,0)", "x = 1"));
    c.clients.push_back(client("P2", "(d,0)", "x = 2"));
    c.clients.push_back(client("P3", "(f,1)", "x = 3"));
    c.clients.push_back(client("P4", "(a,2)", "x = 4"));
    if (name == "fig6") {
      c.clients.push_back(client("S1", "(a,0)", std::nullopt, {"x >= 1"}));
      c.clients.push_back(client("S2", "(f,0)", std::nullopt, {"x <= 2"}));
      c.clients.push_back(client("S3", "(f,1)", std::nullopt, {"x >= 3"}));
      c.clients.push_back(client("S4", "(a,2)", std::nullopt, {"x = 1"}));
    }
    return c;
  }
  if (name.size() == 5 && name.substr(0, 4) == "fig7") return fig7(name[4], routing);
  if (name == "fig8") {
    // Interest: P1 -> {S4}, P2 -> {S1, S4}, P3 -> {S1, S2, S3, S4}.
    auto c = scripted("fig8", "fig3", routing);
    c.clients.push_back(client("P1", "(a,2)", "x = 1"));
    c.clients.push_back(client("P2", "(a,1)", "x = 2"));
    c.clients.push_back(client("P3", "(e,1)", "x = 3"));
    c.clients.push_back(client("S1", "(a,0)", std::nullopt, {"x >= 2"}));
    c.clients.push_back(client("S2", "(f,0)", std::nullopt, {"x >= 3"}));
    c.clients.push_back(client("S3", "(f,1)", std::nullopt, {"x >= 3"}));
    c.clients.push_back(client("S4", "(f,2)", std::nullopt, {"x >= 1"}));
    c.notifications.push_back({"P1", 1 * kMillisecond, "x = 1"});
    c.notifications.push_back({"P2", 2 * kMillisecond, "x = 2"});
    c.notifications.push_back({"P3", 3 * kMillisecond, "x = 3"});
    return c;
  }
  if (name == "burst") {
    ScenarioConfig c;
    c.name = "burst";
    c.preset = "fig10";
    c.routing = routing;
    c.seed = 7;
    c.links.latency = kMillisecond;
    c.links.alink_rate = 20.0;
    c.links.ilink_rate = 2.0;
    WorkloadSpec w;
    w.publishers = 10;
    w.subscribers = 500;
    w.notifications = 0;
    w.selectivity = 0.02;
    c.workload = w;
    BurstSpec b;
    b.notifications = 2000;
    b.interval = 400;
    b.interested_fraction = 0.02;
    b.hrp_host = "(G,0)";
    c.burst = b;
    c.watch = {b.hrp_host};
    return c;
  }
  throw ConfigError(fmt::format("unknown scenario preset '{}'", name));
}

}  // namespace octopia
