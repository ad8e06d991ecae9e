#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace octopia {

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using VertexIndex = std::size_t;

// Canonical undirected edge: first < second.
struct Edge {
  VertexIndex first;
  VertexIndex second;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph over opaque string labels.
///
/// Vertices are indexed in the order their labels were supplied. Edges are
/// canonical (no self-loops, no duplicates, {u,v} == {v,u}) and adjacency
/// lists are sorted by index, so every traversal is deterministic.
class Graph {
 public:
  Graph() = default;

  /// Throws GraphError on a duplicate label, a dangling endpoint or a self-loop.
  /// Repeated edges collapse to one.
  static Graph build(const std::vector<std::string>& vertex_labels,
                     const std::vector<std::pair<std::string, std::string>>& edge_pairs);

  std::size_t order() const { return labels_.size(); }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return labels_.empty(); }

  const std::string& label(VertexIndex v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const { return labels_; }
  bool contains(std::string_view label) const;
  VertexIndex index_of(std::string_view label) const;

  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<VertexIndex>& neighbours(VertexIndex v) const { return adjacency_.at(v); }
  std::size_t degree(VertexIndex v) const { return adjacency_.at(v).size(); }
  bool has_edge(VertexIndex u, VertexIndex v) const;

  std::size_t min_degree() const;
  std::size_t max_degree() const;

  bool is_connected() const;
  /// Connected and |E| = |V| - 1.
  bool is_tree() const;
  bool is_complete() const;

  /// BFS edge counts from `source`; unreachable vertices hold SIZE_MAX.
  std::vector<std::size_t> distances_from(VertexIndex source) const;

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, VertexIndex> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<VertexIndex>> adjacency_;
};

// Index pair into the two factors of a Cartesian product.
struct ProductVertex {
  VertexIndex first;
  VertexIndex second;

  friend auto operator<=>(const ProductVertex&, const ProductVertex&) = default;
};

struct ProductGraph {
  Graph graph;
  // parts[v] names the factor vertices of product vertex v.
  std::vector<ProductVertex> parts;
  std::size_t first_order = 0;
  std::size_t second_order = 0;

  VertexIndex index_of(ProductVertex p) const { return p.first * second_order + p.second; }
};

/// G □ H. Product vertex (g,h) gets index g*|H| + h and label "(g,h)".
ProductGraph cartesian_product(const Graph& g, const Graph& h);

/// Throws GraphError when `g` is empty or disconnected.
std::size_t diameter(const Graph& g);

/// Exact vertex connectivity; a complete graph K_n has n - 1.
std::size_t vertex_connectivity(const Graph& g);
/// Exact edge connectivity.
std::size_t edge_connectivity(const Graph& g);

struct ConnectivityBounds {
  std::size_t kappa = 0;
  std::size_t lambda = 0;
};

/// Vertex and edge connectivity of G □ H from the factor values:
///   kappa  = min{ kappa(G)|H|,  |G| kappa(H),  delta(G) + delta(H) }
///   lambda = min{ lambda(G)|H|, |G| lambda(H), delta(G) + delta(H) }
/// Both factors need at least two vertices and must be connected.
ConnectivityBounds connectivity_bounds(const Graph& g, const Graph& h);

// Edge-list text format: one "u v" per line; a lone "u" declares an isolated
// vertex; '#' starts a comment. Vertices are indexed by first appearance.
Graph parse_graph_text(std::istream& in);
Graph parse_graph_text(std::string_view text);
Graph load_graph_file(const std::string& path);
std::string to_graph_text(const Graph& g);

}  // namespace octopia
