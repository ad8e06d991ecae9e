#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "octopia/graph.hpp"

namespace octopia {

using BrokerIndex = std::size_t;
using ClusterIndex = std::size_t;

/// A SCOT broker is named by (acyclic-factor label, cluster index).
struct BrokerId {
  std::string af;
  ClusterIndex ci = 0;

  std::string str() const;  // "(a,0)"
  friend auto operator<=>(const BrokerId&, const BrokerId&) = default;
};

/// Parses "(a,0)" or "a,0".
BrokerId parse_broker_id(std::string_view text);

enum class BrokerClass { Edge, Inner };
enum class LinkKind { ALink, ILink };

std::string_view to_string(BrokerClass c);
std::string_view to_string(LinkKind k);

struct NeighbourInfo {
  std::vector<BrokerIndex> primary;    // same cluster, over aLinks
  std::vector<BrokerIndex> secondary;  // same region, over iLinks
  BrokerClass broker_class = BrokerClass::Edge;
};

struct ScotLink {
  BrokerIndex a;
  BrokerIndex b;
  LinkKind kind;
};

enum class ScotProperty { Acyclic, Connectivity, Index, LabelOrder };
std::string_view to_string(ScotProperty p);

struct Violation {
  ScotProperty property;
  std::string detail;
};

/// Checks the four factor properties: the acyclic factor is a tree, the
/// connectivity factor is complete, connectivity labels are 0..n-1, and the
/// operands are in acyclic-first order. Returns every violation found.
std::vector<Violation> validate_factors(const Graph& g_af, const Graph& g_cf);

class TopologyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Structured cyclic overlay: G_af □ G_cf with clusters (copies of G_af, one
/// per cluster index) and regions (copies of G_cf, one per G_af vertex).
///
/// Broker index = af_vertex * |V_cf| + cluster index. Immutable once built.
class ScotTopology {
 public:
  /// Throws TopologyError listing every factor violation.
  static ScotTopology build(const Graph& g_af, const Graph& g_cf);

  const Graph& acyclic_factor() const { return af_; }
  const Graph& connectivity_factor() const { return cf_; }
  const Graph& overlay() const { return product_.graph; }

  std::size_t broker_count() const { return ids_.size(); }
  std::size_t cluster_count() const { return cf_.order(); }
  std::size_t region_count() const { return af_.order(); }
  std::size_t diam_af() const { return diam_af_; }

  const BrokerId& id(BrokerIndex b) const { return ids_.at(b); }
  std::string name(BrokerIndex b) const { return id(b).str(); }
  BrokerIndex index_of(const BrokerId& id) const;
  bool contains(const BrokerId& id) const;
  BrokerIndex broker_at(VertexIndex af_vertex, ClusterIndex ci) const {
    return af_vertex * cluster_count() + ci;
  }

  ClusterIndex cluster_of(BrokerIndex b) const { return b % cluster_count(); }
  VertexIndex region_of(BrokerIndex b) const { return b / cluster_count(); }

  const std::vector<BrokerIndex>& cluster(ClusterIndex ci) const { return clusters_.at(ci); }
  const std::vector<BrokerIndex>& region(VertexIndex af_vertex) const { return regions_.at(af_vertex); }

  const std::vector<ScotLink>& alinks() const { return alinks_; }
  const std::vector<ScotLink>& ilinks() const { return ilinks_; }

  bool adjacent(BrokerIndex u, BrokerIndex v) const { return overlay().has_edge(u, v); }
  /// Throws TopologyError if u and v are not adjacent.
  LinkKind link_kind(BrokerIndex u, BrokerIndex v) const;

  const NeighbourInfo& neighbours(BrokerIndex b) const { return neighbours_.at(b); }
  /// Throws TopologyError for an unknown broker.
  const NeighbourInfo& neighbours(const BrokerId& b) const;

  /// The broker in b's region that belongs to cluster `ci`.
  BrokerIndex region_peer(BrokerIndex b, ClusterIndex ci) const {
    return broker_at(region_of(b), ci);
  }

 private:
  Graph af_;
  Graph cf_;  // relabelled so that vertex index == cluster index
  ProductGraph product_;
  std::vector<BrokerId> ids_;
  std::vector<std::vector<BrokerIndex>> clusters_;
  std::vector<std::vector<BrokerIndex>> regions_;
  std::vector<ScotLink> alinks_;
  std::vector<ScotLink> ilinks_;
  std::vector<NeighbourInfo> neighbours_;
  std::size_t diam_af_ = 0;
};

/// Complete graph on labels "0".."n-1".
Graph complete_graph(std::size_t n);
/// Path graph over the given labels.
Graph path_graph(const std::vector<std::string>& labels);

}  // namespace octopia
