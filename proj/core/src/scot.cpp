#include "octopia/scot.hpp"

#include <algorithm>
#include <charconv>

#include <fmt/format.h>

namespace octopia {

namespace {

bool parse_index(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

// Index property: labels are exactly the integers 0..n-1.
bool has_index_labels(const Graph& g) {
  std::vector<bool> seen(g.order(), false);
  for (const auto& label : g.labels()) {
    std::size_t v = 0;
    if (!parse_index(label, v) || v >= g.order() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

}  // namespace

std::string BrokerId::str() const { return fmt::format("({},{})", af, ci); }

BrokerId parse_broker_id(std::string_view text) {
  if (!text.empty() && text.front() == '(' && text.back() == ')') {
    text = text.substr(1, text.size() - 2);
  }
  const auto comma = text.rfind(',');
  BrokerId id;
  if (comma == std::string_view::npos || comma == 0 ||
      !parse_index(text.substr(comma + 1), id.ci)) {
    throw TopologyError(fmt::format("malformed broker id '{}'", text));
  }
  id.af = std::string(text.substr(0, comma));
  return id;
}

std::string_view to_string(BrokerClass c) { return c == BrokerClass::Edge ? "edge" : "inner"; }
std::string_view to_string(LinkKind k) { return k == LinkKind::ALink ? "alink" : "ilink"; }

std::string_view to_string(ScotProperty p) {
  switch (p) {
    case ScotProperty::Acyclic: return "acyclic";
    case ScotProperty::Connectivity: return "connectivity";
    case ScotProperty::Index: return "index";
    case ScotProperty::LabelOrder: return "label order";
  }
  return "?";
}

std::vector<Violation> validate_factors(const Graph& g_af, const Graph& g_cf) {
  std::vector<Violation> out;
  const bool af_tree = g_af.is_tree();
  const bool cf_complete = g_cf.is_complete();
  if (!af_tree) {
    out.push_back({ScotProperty::Acyclic,
                   g_af.empty() ? "acyclic factor is empty"
                                : "acyclic factor must be a connected graph without cycles"});
  }
  if (!cf_complete) {
    out.push_back({ScotProperty::Connectivity,
                   g_cf.empty() ? "connectivity factor is empty"
                                : "connectivity factor must be a complete graph"});
  }
  if (!g_cf.empty() && !has_index_labels(g_cf)) {
    out.push_back({ScotProperty::Index,
                   "connectivity factor labels must be the integers 0..n-1"});
  }
  if (!af_tree && g_af.is_complete() && g_cf.is_tree()) {
    out.push_back({ScotProperty::LabelOrder,
                   "operands appear swapped: the acyclic factor must come first"});
  }
  return out;
}

ScotTopology ScotTopology::build(const Graph& g_af, const Graph& g_cf) {
  if (const auto violations = validate_factors(g_af, g_cf); !violations.empty()) {
    std::string msg = "invalid SCOT factors:";
    for (const auto& v : violations) msg += fmt::format(" [{}] {};", to_string(v.property), v.detail);
    throw TopologyError(msg);
  }

  ScotTopology t;
  t.af_ = g_af;
  const auto n_cf = g_cf.order();
  {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n_cf; ++i) labels.push_back(std::to_string(i));
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : g_cf.edges()) edges.emplace_back(g_cf.label(e.first), g_cf.label(e.second));
    t.cf_ = Graph::build(labels, edges);
  }
  t.product_ = cartesian_product(t.af_, t.cf_);
  t.diam_af_ = diameter(t.af_);

  const auto n = t.product_.graph.order();
  t.ids_.reserve(n);
  t.clusters_.assign(n_cf, {});
  t.regions_.assign(t.af_.order(), {});
  for (BrokerIndex b = 0; b < n; ++b) {
    const auto part = t.product_.parts[b];
    t.ids_.push_back({t.af_.label(part.first), part.second});
    t.clusters_[part.second].push_back(b);
    t.regions_[part.first].push_back(b);
  }

  for (const auto& e : t.product_.graph.edges()) {
    const bool same_cluster = t.cluster_of(e.first) == t.cluster_of(e.second);
    (same_cluster ? t.alinks_ : t.ilinks_)
        .push_back({e.first, e.second, same_cluster ? LinkKind::ALink : LinkKind::ILink});
  }

  t.neighbours_.resize(n);
  for (BrokerIndex b = 0; b < n; ++b) {
    auto& info = t.neighbours_[b];
    for (auto v : t.product_.graph.neighbours(b)) {
      (t.cluster_of(v) == t.cluster_of(b) ? info.primary : info.secondary).push_back(v);
    }
    info.broker_class = info.primary.size() <= 1 ? BrokerClass::Edge : BrokerClass::Inner;
  }
  return t;
}

BrokerIndex ScotTopology::index_of(const BrokerId& id) const {
  if (!contains(id)) throw TopologyError(fmt::format("unknown broker {}", id.str()));
  return broker_at(af_.index_of(id.af), id.ci);
}

bool ScotTopology::contains(const BrokerId& id) const {
  return af_.contains(id.af) && id.ci < cluster_count();
}

LinkKind ScotTopology::link_kind(BrokerIndex u, BrokerIndex v) const {
  if (!adjacent(u, v)) {
    throw TopologyError(fmt::format("{} and {} are not adjacent", name(u), name(v)));
  }
  return cluster_of(u) == cluster_of(v) ? LinkKind::ALink : LinkKind::ILink;
}

const NeighbourInfo& ScotTopology::neighbours(const BrokerId& b) const {
  return neighbours_.at(index_of(b));
}

Graph complete_graph(std::size_t n) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(labels[i], labels[j]);
  }
  return Graph::build(labels, edges);
}

Graph path_graph(const std::vector<std::string>& labels) {
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 1; i < labels.size(); ++i) edges.emplace_back(labels[i - 1], labels[i]);
  return Graph::build(labels, edges);
}

}  // namespace octopia
