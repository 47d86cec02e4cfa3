#pragma once

#include <filesystem>
#include <initializer_list>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "pmsr/hop_path.hpp"
#include "pmsr/routing.hpp"
#include "pmsr/topology.hpp"

namespace pmsr::testing {

std::filesystem::path data_dir();
Topology load_f7();

NodeId node_id(const Topology& topology, std::string_view name);
NodePath node_path(const Topology& topology, std::initializer_list<std::string_view> names);
HopPath hop_path(const Topology& topology, std::initializer_list<std::string_view> names);

struct RandomGraphSpec {
  std::size_t nodes = 6;
  double extra_edge_probability = 0.3;
  Cost min_cost = 1;
  Cost max_cost = 4;
  double capacity = 10.0;
};

/// Connected random graph: random spanning tree plus independent extra
/// edges; undirected, integer costs drawn uniformly per edge.
Topology random_topology(std::mt19937_64& rng, const RandomGraphSpec& spec);

/// Random self-avoiding walk of 1..max_links links; nullopt if the start
/// node has no neighbour (never for connected graphs with 2+ nodes).
std::optional<HopPath> random_simple_path(std::mt19937_64& rng, const Topology& topology,
                                          std::size_t max_links);

// Brute-force references, independent of the routing module.

/// All-pairs distances by Floyd-Warshall; kUnreachable when disconnected.
std::vector<std::vector<Cost>> floyd_warshall(const Topology& topology);

/// Every simple path x -> y, lexicographic.
std::vector<NodePath> all_simple_paths(const Topology& topology, NodeId x, NodeId y);

/// Minimum-cost members of all_simple_paths.
std::vector<NodePath> brute_shortest_paths(const Topology& topology, NodeId x, NodeId y);

/// Biased walk toward y enumerated with Floyd-Warshall distances: the
/// direct link to y when present, else every neighbour on a shortest path.
std::vector<NodePath> brute_biased_paths(const Topology& topology,
                                         const std::vector<std::vector<Cost>>& dist,
                                         NodeId x, NodeId y);

/// Synthetic sparse backbone with Colt's size (153 nodes, 177 undirected
/// edges, unit costs, 1 Gb/s links). Used only when the real Colt GraphML
/// is not available.
Topology colt_sized_standin(std::uint64_t seed);

/// Path to a Colt GraphML file from PMSR_COLT_GRAPHML or data/Colt.graphml.
std::optional<std::filesystem::path> find_colt_graphml();

}  // namespace pmsr::testing
