#include "pmsr/routing.hpp"

#include <functional>
#include <queue>
#include <stdexcept>

#include "pmsr/error.hpp"

namespace pmsr {
namespace {

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return std::min(a + b, kSpnSaturation);
}

// Depth-first enumeration of walks toward `y`; `step` yields the candidate
// successors of a node.
template <typename Step>
std::vector<NodePath> enumerate_walks(NodeId x, NodeId y, std::size_t cap,
                                      const char* what, Step step) {
  std::vector<NodePath> out;
  NodePath current{x};
  std::function<void(NodeId)> visit = [&](NodeId v) {
    if (v == y) {
      if (out.size() >= cap) {
        throw OverflowError(std::string(what) + ": more than " + std::to_string(cap) +
                            " paths");
      }
      out.push_back(current);
      return;
    }
    for (NodeId next : step(v)) {
      current.push_back(next);
      visit(next);
      current.pop_back();
    }
  };
  visit(x);
  return out;
}

}  // namespace

RoutingView build_routing(const Topology& topology) {
  RoutingView rv;
  const auto n = topology.node_count();
  rv.n_ = n;
  rv.dist_.assign(n * n, kUnreachable);
  rv.spn_.assign(n * n, 0);
  rv.nexthops_.assign(n * n, {});

  using Item = std::pair<Cost, NodeId>;
  std::vector<NodeId> settled_order;
  for (NodeId src = 0; src < n; ++src) {
    Cost* dist = rv.dist_.data() + std::size_t{src} * n;
    std::uint64_t* count = rv.spn_.data() + std::size_t{src} * n;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    std::vector<bool> done(n, false);
    settled_order.clear();

    dist[src] = 0;
    queue.emplace(0, src);
    while (!queue.empty()) {
      auto [d, v] = queue.top();
      queue.pop();
      if (done[v]) continue;
      done[v] = true;
      settled_order.push_back(v);
      for (LinkId id : topology.out_links(v)) {
        const auto& l = topology.link(id);
        const Cost candidate = d + l.cost;
        if (candidate < dist[l.dst]) {
          dist[l.dst] = candidate;
          queue.emplace(candidate, l.dst);
        }
      }
    }

    // Costs are >= 1, so every predecessor settles before its successor.
    count[src] = 1;
    for (NodeId v : settled_order) {
      for (LinkId id : topology.out_links(v)) {
        const auto& l = topology.link(id);
        if (dist[v] + l.cost == dist[l.dst]) {
          count[l.dst] = saturating_add(count[l.dst], count[v]);
        }
      }
    }
  }

  for (NodeId x = 0; x < n; ++x) {
    for (NodeId y = 0; y < n; ++y) {
      const Cost target = rv.dist_[rv.at(x, y)];
      if (x == y || target == kUnreachable) continue;
      auto& hops = rv.nexthops_[rv.at(x, y)];
      for (LinkId id : topology.out_links(x)) {
        const auto& l = topology.link(id);
        const Cost rest = rv.dist_[rv.at(l.dst, y)];
        if (rest != kUnreachable && l.cost + rest == target) hops.push_back(l.dst);
      }
    }
  }
  return rv;
}

std::vector<NodePath> sp_set(const RoutingView& rv, NodeId x, NodeId y,
                             std::size_t cap) {
  if (!rv.reachable(x, y)) throw std::invalid_argument("sp_set: destination unreachable");
  return enumerate_walks(x, y, cap, "sp_set",
                         [&](NodeId v) { return rv.nexthops(v, y); });
}

std::vector<NodePath> biased_paths(const RoutingView& rv, const Topology& topology,
                                   NodeId x, NodeId y, std::size_t cap) {
  if (!rv.reachable(x, y)) {
    throw std::invalid_argument("biased_paths: destination unreachable");
  }
  const NodeId direct[1] = {y};
  return enumerate_walks(x, y, cap, "biased_paths", [&](NodeId v) {
    return topology.adjacent(v, y) ? std::span<const NodeId>(direct)
                                   : rv.nexthops(v, y);
  });
}

std::uint64_t spn_star(const RoutingView& rv, const Topology& topology, NodeId x,
                       NodeId y) {
  if (!rv.reachable(x, y)) return 0;
  std::vector<std::uint64_t> memo(rv.node_count(), 0);
  std::function<std::uint64_t(NodeId)> count = [&](NodeId v) -> std::uint64_t {
    if (v == y || topology.adjacent(v, y)) return 1;
    if (memo[v] != 0) return memo[v];
    std::uint64_t total = 0;
    for (NodeId next : rv.nexthops(v, y)) total = saturating_add(total, count(next));
    return memo[v] = total;
  };
  return count(x);
}

std::optional<NodePath> unique_biased_path(const RoutingView& rv,
                                           const Topology& topology, NodeId x,
                                           NodeId y) {
  if (!rv.reachable(x, y)) return std::nullopt;
  NodePath path{x};
  NodeId v = x;
  while (v != y) {
    if (topology.adjacent(v, y)) {
      v = y;
    } else {
      auto hops = rv.nexthops(v, y);
      if (hops.size() != 1) return std::nullopt;
      v = hops.front();
    }
    path.push_back(v);
  }
  return path;
}

Cost path_cost(const Topology& topology, std::span<const NodeId> nodes) {
  Cost total = 0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    auto link = topology.find_link(nodes[i - 1], nodes[i]);
    if (!link) return kUnreachable;
    total += topology.link(*link).cost;
  }
  return total;
}

}  // namespace pmsr
