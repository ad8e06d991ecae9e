#include "octopia/graph.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>

#include <fmt/format.h>

namespace octopia {

namespace {

constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

// Unit/infinite capacity max-flow (Edmonds-Karp). Networks here are tiny.
class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes) : adj_(nodes) {}

  void add_arc(std::size_t from, std::size_t to, int capacity) {
    adj_[from].push_back(arcs_.size());
    arcs_.push_back({to, capacity});
    adj_[to].push_back(arcs_.size());
    arcs_.push_back({from, 0});
  }

  int max_flow(std::size_t source, std::size_t sink) {
    int flow = 0;
    std::vector<std::size_t> via(adj_.size());
    for (;;) {
      std::fill(via.begin(), via.end(), kUnreachable);
      std::queue<std::size_t> frontier;
      frontier.push(source);
      via[source] = arcs_.size();
      while (!frontier.empty() && via[sink] == kUnreachable) {
        const auto u = frontier.front();
        frontier.pop();
        for (auto a : adj_[u]) {
          const auto& arc = arcs_[a];
          if (arc.capacity > 0 && via[arc.to] == kUnreachable) {
            via[arc.to] = a;
            frontier.push(arc.to);
          }
        }
      }
      if (via[sink] == kUnreachable) return flow;
      int bottleneck = std::numeric_limits<int>::max();
      for (auto v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
        bottleneck = std::min(bottleneck, arcs_[via[v]].capacity);
      }
      for (auto v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
        arcs_[via[v]].capacity -= bottleneck;
        arcs_[via[v] ^ 1].capacity += bottleneck;
      }
      flow += bottleneck;
    }
  }

 private:
  struct Arc {
    std::size_t to;
    int capacity;
  };
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Arc> arcs_;
};

constexpr int kInfinite = 1 << 20;

// Maximum number of internally vertex-disjoint s-t paths (s, t non-adjacent).
std::size_t local_vertex_connectivity(const Graph& g, VertexIndex s, VertexIndex t) {
  const auto n = g.order();
  FlowNetwork net(2 * n);
  for (VertexIndex v = 0; v < n; ++v) {
    net.add_arc(2 * v, 2 * v + 1, (v == s || v == t) ? kInfinite : 1);
  }
  for (const auto& e : g.edges()) {
    net.add_arc(2 * e.first + 1, 2 * e.second, kInfinite);
    net.add_arc(2 * e.second + 1, 2 * e.first, kInfinite);
  }
  return static_cast<std::size_t>(net.max_flow(2 * s + 1, 2 * t));
}

std::size_t local_edge_connectivity(const Graph& g, VertexIndex s, VertexIndex t) {
  FlowNetwork net(g.order());
  for (const auto& e : g.edges()) {
    net.add_arc(e.first, e.second, 1);
    net.add_arc(e.second, e.first, 1);
  }
  return static_cast<std::size_t>(net.max_flow(s, t));
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

Graph Graph::build(const std::vector<std::string>& vertex_labels,
                   const std::vector<std::pair<std::string, std::string>>& edge_pairs) {
  Graph g;
  g.labels_.reserve(vertex_labels.size());
  for (const auto& label : vertex_labels) {
    if (!g.index_.emplace(label, g.labels_.size()).second) {
      throw GraphError(fmt::format("duplicate vertex label '{}'", label));
    }
    g.labels_.push_back(label);
  }
  g.adjacency_.resize(g.labels_.size());

  for (const auto& [a, b] : edge_pairs) {
    const auto ia = g.index_.find(a);
    const auto ib = g.index_.find(b);
    if (ia == g.index_.end() || ib == g.index_.end()) {
      throw GraphError(fmt::format("edge {}-{} has an endpoint that is not a vertex", a, b));
    }
    if (ia->second == ib->second) {
      throw GraphError(fmt::format("self-loop on vertex '{}'", a));
    }
    g.edges_.push_back({std::min(ia->second, ib->second), std::max(ia->second, ib->second)});
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());
  for (const auto& e : g.edges_) {
    g.adjacency_[e.first].push_back(e.second);
    g.adjacency_[e.second].push_back(e.first);
  }
  for (auto& list : g.adjacency_) std::sort(list.begin(), list.end());
  return g;
}

bool Graph::contains(std::string_view label) const {
  return index_.find(std::string(label)) != index_.end();
}

VertexIndex Graph::index_of(std::string_view label) const {
  const auto it = index_.find(std::string(label));
  if (it == index_.end()) throw GraphError(fmt::format("unknown vertex '{}'", label));
  return it->second;
}

bool Graph::has_edge(VertexIndex u, VertexIndex v) const {
  const auto& list = adjacency_.at(u);
  return std::binary_search(list.begin(), list.end(), v);
}

std::size_t Graph::min_degree() const {
  std::size_t best = kUnreachable;
  for (const auto& list : adjacency_) best = std::min(best, list.size());
  return empty() ? 0 : best;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (const auto& list : adjacency_) best = std::max(best, list.size());
  return best;
}

std::vector<std::size_t> Graph::distances_from(VertexIndex source) const {
  std::vector<std::size_t> dist(order(), kUnreachable);
  std::queue<VertexIndex> frontier;
  dist.at(source) = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const auto u = frontier.front();
    frontier.pop();
    for (auto v : adjacency_[u]) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        frontier.push(v);
      }
    }
  }
  return dist;
}

bool Graph::is_connected() const {
  if (empty()) return false;
  const auto dist = distances_from(0);
  return std::none_of(dist.begin(), dist.end(), [](auto d) { return d == kUnreachable; });
}

bool Graph::is_tree() const { return is_connected() && size() + 1 == order(); }

bool Graph::is_complete() const {
  const auto n = order();
  return n > 0 && size() == n * (n - 1) / 2;
}

ProductGraph cartesian_product(const Graph& g, const Graph& h) {
  if (g.empty() || h.empty()) throw GraphError("cartesian product of an empty factor");

  ProductGraph p;
  p.first_order = g.order();
  p.second_order = h.order();

  std::vector<std::string> labels;
  labels.reserve(g.order() * h.order());
  for (VertexIndex a = 0; a < g.order(); ++a) {
    for (VertexIndex b = 0; b < h.order(); ++b) {
      labels.push_back(fmt::format("({},{})", g.label(a), h.label(b)));
      p.parts.push_back({a, b});
    }
  }

  std::vector<std::pair<std::string, std::string>> edges;
  edges.reserve(g.size() * h.order() + g.order() * h.size());
  // gg' in E_G and h = h'
  for (const auto& e : g.edges()) {
    for (VertexIndex b = 0; b < h.order(); ++b) {
      edges.emplace_back(labels[p.index_of({e.first, b})], labels[p.index_of({e.second, b})]);
    }
  }
  // g = g' and hh' in E_H
  for (VertexIndex a = 0; a < g.order(); ++a) {
    for (const auto& e : h.edges()) {
      edges.emplace_back(labels[p.index_of({a, e.first})], labels[p.index_of({a, e.second})]);
    }
  }
  p.graph = Graph::build(labels, edges);
  return p;
}

std::size_t diameter(const Graph& g) {
  if (g.empty()) throw GraphError("diameter of an empty graph");
  std::size_t best = 0;
  for (VertexIndex v = 0; v < g.order(); ++v) {
    for (auto d : g.distances_from(v)) {
      if (d == kUnreachable) throw GraphError("diameter of a disconnected graph");
      best = std::max(best, d);
    }
  }
  return best;
}

std::size_t vertex_connectivity(const Graph& g) {
  const auto n = g.order();
  if (n <= 1 || !g.is_connected()) return 0;
  if (g.is_complete()) return n - 1;
  std::size_t best = n - 1;
  for (VertexIndex s = 0; s < n; ++s) {
    for (VertexIndex t = s + 1; t < n; ++t) {
      if (!g.has_edge(s, t)) best = std::min(best, local_vertex_connectivity(g, s, t));
    }
  }
  return best;
}

std::size_t edge_connectivity(const Graph& g) {
  const auto n = g.order();
  if (n <= 1 || !g.is_connected()) return 0;
  std::size_t best = kUnreachable;
  // Some minimum cut separates vertex 0 from some t.
  for (VertexIndex t = 1; t < n; ++t) best = std::min(best, local_edge_connectivity(g, 0, t));
  return best;
}

ConnectivityBounds connectivity_bounds(const Graph& g, const Graph& h) {
  if (g.order() < 2 || h.order() < 2) {
    throw GraphError("connectivity bounds need factors with at least two vertices");
  }
  if (!g.is_connected() || !h.is_connected()) {
    throw GraphError("connectivity bounds need connected factors");
  }
  const auto delta = g.min_degree() + h.min_degree();
  ConnectivityBounds b;
  b.kappa = std::min({vertex_connectivity(g) * h.order(), g.order() * vertex_connectivity(h), delta});
  b.lambda = std::min({edge_connectivity(g) * h.order(), g.order() * edge_connectivity(h), delta});
  return b;
}

Graph parse_graph_text(std::istream& in) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, bool> seen;
  std::vector<std::pair<std::string, std::string>> edges;
  auto note = [&](const std::string& v) {
    if (seen.emplace(v, true).second) labels.push_back(v);
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto body = trim(line);
    if (body.empty()) continue;
    std::istringstream tokens(body);
    std::vector<std::string> parts;
    for (std::string t; tokens >> t;) parts.push_back(t);
    if (parts.size() == 1) {
      note(parts[0]);
    } else if (parts.size() == 2) {
      note(parts[0]);
      note(parts[1]);
      edges.emplace_back(parts[0], parts[1]);
    } else {
      throw GraphError(fmt::format("line {}: expected 'u v' or 'u', got '{}'", line_no, body));
    }
  }
  return Graph::build(labels, edges);
}

Graph parse_graph_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph_text(in);
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError(fmt::format("cannot open graph file '{}'", path));
  return parse_graph_text(in);
}

std::string to_graph_text(const Graph& g) {
  std::string out;
  std::vector<bool> covered(g.order(), false);
  for (const auto& e : g.edges()) {
    out += fmt::format("{} {}\n", g.label(e.first), g.label(e.second));
    covered[e.first] = covered[e.second] = true;
  }
  for (VertexIndex v = 0; v < g.order(); ++v) {
    if (!covered[v]) out += g.label(v) + "\n";
  }
  return out;
}

}  // namespace octopia
