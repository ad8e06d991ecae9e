#include "octopia/routing_node.hpp"

#include <fmt/format.h>

namespace octopia {

RoutingNode::RoutingNode(const ScotTopology& topo, BrokerIndex self, SimTime window)
    : topo_(topo), self_(self), lst_(window) {}

void RoutingNode::trace(int level, SimTime now, std::string_view event, std::string detail) const {
  if (!tracing(level)) return;
  trace_->record({now, std::string(event), topo_.name(self_), std::move(detail)});
}

std::string RoutingNode::hop_name(const Hop& h) const {
  return h.is_client ? fmt::format("client:{}", h.client_id()) : topo_.name(h.broker_index());
}

}  // namespace octopia
