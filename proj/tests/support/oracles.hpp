#pragma once

// Brute-force reference implementations used by the tests. Nothing here
// calls into the library code it checks.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "octopia/filter.hpp"
#include "octopia/graph.hpp"
#include "octopia/messages.hpp"
#include "octopia/simulator.hpp"

namespace oracle {

using octopia::Graph;

Graph random_tree(std::size_t n, std::mt19937_64& rng);
Graph random_connected(std::size_t n, double p, std::mt19937_64& rng);

/// Adjacency of G x H straight from the definition: (g,h)~(g',h') iff
/// g=g' and h~h', or h=h' and g~g'. Indexed [g*|H|+h][g'*|H|+h'].
std::vector<std::vector<bool>> product_adjacency(const Graph& g, const Graph& h);

/// Minimum vertex cut by subset enumeration (n-1 for complete graphs).
std::size_t min_vertex_cut(const Graph& g);
/// Minimum edge cut by subset enumeration.
std::size_t min_edge_cut(const Graph& g);
std::size_t min_degree(const Graph& g);
/// Longest BFS distance over all pairs.
std::size_t diameter(const Graph& g);

bool satisfies(const octopia::Predicate& p, const octopia::Value& v);
bool matches(const octopia::Payload& payload, const octopia::Filter& f);
/// Searches a grid of candidate values built from the constants of both
/// filters (each constant, its neighbours at +-0.5, midpoints) for a payload
/// satisfying both.
bool overlaps(const octopia::Filter& a, const octopia::Filter& b);

/// notif -> subscribers whose filters match, over everything the simulator
/// saw published and every subscription still active.
std::map<octopia::NotifId, std::set<octopia::ClientId>> expected_deliveries(const octopia::Simulator& sim);

/// Bit i set iff some active subscription hosted in cluster i overlaps the
/// advertisement.
std::uint64_t expected_acxt_bits(const octopia::Simulator& sim, const octopia::AdvId& adv);

}  // namespace oracle
