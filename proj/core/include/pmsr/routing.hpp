#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "pmsr/topology.hpp"

namespace pmsr {

using NodePath = std::vector<NodeId>;

inline constexpr Cost kUnreachable = std::numeric_limits<Cost>::max();
/// Path counts saturate here; every consumer only compares them against 1.
inline constexpr std::uint64_t kSpnSaturation = std::uint64_t{1} << 31;
inline constexpr std::size_t kDefaultPathCap = 1'000'000;

/// All-pairs IGP view: shortest distances, equal-cost path counts and ECMP
/// next-hop sets, as every router computes them with SPF.
class RoutingView {
 public:
  RoutingView() = default;

  std::size_t node_count() const noexcept { return n_; }

  Cost distance(NodeId x, NodeId y) const { return dist_[at(x, y)]; }
  bool reachable(NodeId x, NodeId y) const { return distance(x, y) != kUnreachable; }

  /// Number of distinct equal-cost shortest paths, saturating at
  /// kSpnSaturation. 1 for x == y, 0 when unreachable.
  std::uint64_t spn(NodeId x, NodeId y) const { return spn_[at(x, y)]; }

  /// First hops of all shortest paths x -> y, ascending by node id.
  std::span<const NodeId> nexthops(NodeId x, NodeId y) const {
    return nexthops_[at(x, y)];
  }

  friend RoutingView build_routing(const Topology& topology);

 private:
  std::size_t at(NodeId x, NodeId y) const { return std::size_t{x} * n_ + y; }

  std::size_t n_ = 0;
  std::vector<Cost> dist_;
  std::vector<std::uint64_t> spn_;
  std::vector<std::vector<NodeId>> nexthops_;
};

/// Dijkstra with path counting from every node.
RoutingView build_routing(const Topology& topology);

inline std::uint64_t spn(const RoutingView& rv, NodeId x, NodeId y) {
  return rv.spn(x, y);
}

/// Every equal-cost shortest path x -> y, in lexicographic node order.
/// Throws OverflowError if more than `cap` paths exist, and
/// std::invalid_argument if y is unreachable.
std::vector<NodePath> sp_set(const RoutingView& rv, NodeId x, NodeId y,
                             std::size_t cap = kDefaultPathCap);

/// Direct-links biased shortest paths toward y: from x, at every node v
/// the link v->y is taken when it exists (x included), otherwise the walk
/// branches over nexthops(v, y). Lexicographic order; OverflowError past
/// `cap`.
std::vector<NodePath> biased_paths(const RoutingView& rv, const Topology& topology,
                                   NodeId x, NodeId y,
                                   std::size_t cap = kDefaultPathCap);

/// |biased_paths(x, y)| without enumerating, saturating like spn().
std::uint64_t spn_star(const RoutingView& rv, const Topology& topology, NodeId x,
                       NodeId y);

/// The biased walk x -> y when it is unique (spn_star == 1).
std::optional<NodePath> unique_biased_path(const RoutingView& rv,
                                           const Topology& topology, NodeId x,
                                           NodeId y);

/// Sum of link costs along consecutive nodes; kUnreachable if a hop is not
/// a link.
Cost path_cost(const Topology& topology, std::span<const NodeId> nodes);

}  // namespace pmsr
