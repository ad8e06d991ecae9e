#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "octopia/graph.hpp"
#include "octopia/scenario.hpp"
#include "octopia/scot.hpp"

namespace octopia {

/// "fig1": path a-b-c x K2, the six-broker overlay of the flooding example.
/// "fig3": the H-graph a-b, b-c, b-d, d-e, e-f x K3 (18 brokers).
/// "fig7": path a-b-c x K3 (9 brokers).
/// "fig10": 14-vertex tree x K5 (70 brokers).
std::vector<std::string> preset_names();
Graph preset_acyclic_factor(std::string_view name);
Graph preset_connectivity_factor(std::string_view name);
/// Throws ConfigError for an unknown name.
ScotTopology preset_topology(std::string_view name);

/// Hand-placed scenarios reproducing the worked figures:
///   fig5  - four publishers advertise on fig3, no subscribers
///   fig6  - four subscribers on fig3
///   fig7a, fig7b, fig7c, fig7d - one publisher on fig7 with scripted overloads
///   fig8  - three publishers and four subscribers on fig3
///   burst - one high-rate publisher on fig10 with slow iLinks
std::vector<std::string> scenario_names();
ScenarioConfig scenario_preset(std::string_view name, RoutingMode routing = RoutingMode::Snr);

}  // namespace octopia
