#include "support.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>

namespace pmsr::testing {
namespace {

Topology from_edges(std::size_t n, const std::vector<std::tuple<NodeId, NodeId, Cost>>& edges,
                    double capacity, const std::string& prefix) {
  std::vector<Node> nodes;
  for (NodeId i = 0; i < n; ++i) {
    nodes.push_back(Node{i, prefix + std::to_string(i), auto_loopback(i)});
  }
  std::vector<Link> links;
  for (const auto& [a, b, c] : edges) {
    links.push_back(Link{a, b, c, capacity});
    links.push_back(Link{b, a, c, capacity});
  }
  return Topology(std::move(nodes), std::move(links));
}

}  // namespace

std::filesystem::path data_dir() { return PMSR_TEST_DATA_DIR; }

Topology load_f7() { return load_json(data_dir() / "f7.json"); }

NodeId node_id(const Topology& topology, std::string_view name) {
  auto id = topology.find_node(name);
  if (!id) throw std::invalid_argument("no node " + std::string(name));
  return *id;
}

NodePath node_path(const Topology& topology, std::initializer_list<std::string_view> names) {
  NodePath out;
  for (auto n : names) out.push_back(node_id(topology, n));
  return out;
}

HopPath hop_path(const Topology& topology, std::initializer_list<std::string_view> names) {
  return HopPath(topology, node_path(topology, names));
}

Topology random_topology(std::mt19937_64& rng, const RandomGraphSpec& spec) {
  const auto n = spec.nodes;
  std::uniform_int_distribution<Cost> cost(spec.min_cost, spec.max_cost);
  std::bernoulli_distribution extra(spec.extra_edge_probability);
  std::set<std::pair<NodeId, NodeId>> present;
  std::vector<std::tuple<NodeId, NodeId, Cost>> edges;
  for (NodeId v = 1; v < n; ++v) {
    const auto u = std::uniform_int_distribution<NodeId>(0, v - 1)(rng);
    present.emplace(u, v);
    edges.emplace_back(u, v, cost(rng));
  }
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (present.count({u, v})) continue;
      if (extra(rng)) edges.emplace_back(u, v, cost(rng));
    }
  }
  return from_edges(n, edges, spec.capacity, "v");
}

std::optional<HopPath> random_simple_path(std::mt19937_64& rng, const Topology& topology,
                                          std::size_t max_links) {
  const auto n = topology.node_count();
  std::vector<NodeId> path{std::uniform_int_distribution<NodeId>(0, n - 1)(rng)};
  const auto target = std::uniform_int_distribution<std::size_t>(1, max_links)(rng);
  std::vector<bool> used(n, false);
  used[path.back()] = true;
  while (path.size() - 1 < target) {
    std::vector<NodeId> options;
    for (LinkId l : topology.out_links(path.back())) {
      if (!used[topology.link(l).dst]) options.push_back(topology.link(l).dst);
    }
    if (options.empty()) break;
    const auto next =
        options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    used[next] = true;
    path.push_back(next);
  }
  if (path.size() < 2) return std::nullopt;
  return HopPath(topology, path);
}

std::vector<std::vector<Cost>> floyd_warshall(const Topology& topology) {
  const auto n = topology.node_count();
  std::vector<std::vector<Cost>> d(n, std::vector<Cost>(n, kUnreachable));
  for (NodeId v = 0; v < n; ++v) d[v][v] = 0;
  for (const auto& l : topology.links()) d[l.src][l.dst] = std::min(d[l.src][l.dst], l.cost);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i][k] == kUnreachable) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (d[k][j] == kUnreachable) continue;
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  }
  return d;
}

std::vector<NodePath> all_simple_paths(const Topology& topology, NodeId x, NodeId y) {
  std::vector<NodePath> out;
  NodePath current{x};
  std::vector<bool> used(topology.node_count(), false);
  used[x] = true;
  std::function<void(NodeId)> dfs = [&](NodeId v) {
    if (v == y) {
      out.push_back(current);
      return;
    }
    for (LinkId l : topology.out_links(v)) {
      const NodeId w = topology.link(l).dst;
      if (used[w]) continue;
      used[w] = true;
      current.push_back(w);
      dfs(w);
      current.pop_back();
      used[w] = false;
    }
  };
  dfs(x);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodePath> brute_shortest_paths(const Topology& topology, NodeId x, NodeId y) {
  auto paths = all_simple_paths(topology, x, y);
  Cost best = kUnreachable;
  for (const auto& p : paths) best = std::min(best, path_cost(topology, p));
  std::vector<NodePath> out;
  for (auto& p : paths) {
    if (path_cost(topology, p) == best) out.push_back(std::move(p));
  }
  return out;
}

std::vector<NodePath> brute_biased_paths(const Topology& topology,
                                         const std::vector<std::vector<Cost>>& dist,
                                         NodeId x, NodeId y) {
  std::vector<NodePath> out;
  NodePath current{x};
  std::function<void(NodeId)> walk = [&](NodeId v) {
    if (v == y) {
      out.push_back(current);
      return;
    }
    if (topology.find_link(v, y)) {
      current.push_back(y);
      walk(y);
      current.pop_back();
      return;
    }
    for (LinkId l : topology.out_links(v)) {
      const auto& link = topology.link(l);
      if (dist[link.dst][y] == kUnreachable || link.cost + dist[link.dst][y] != dist[v][y]) {
        continue;
      }
      current.push_back(link.dst);
      walk(link.dst);
      current.pop_back();
    }
  };
  walk(x);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Topology colt_sized_standin(std::uint64_t seed) {
  constexpr std::size_t kNodes = 153;
  constexpr std::size_t kEdges = 177;
  std::mt19937_64 rng(seed);
  std::set<std::pair<NodeId, NodeId>> present;
  std::vector<std::tuple<NodeId, NodeId, Cost>> edges;
  std::vector<NodeId> endpoints;  // degree-weighted attachment pool
  auto add = [&](NodeId a, NodeId b) {
    present.emplace(std::min(a, b), std::max(a, b));
    edges.emplace_back(a, b, 1);
    endpoints.push_back(a);
    endpoints.push_back(b);
  };
  add(0, 1);
  for (NodeId v = 2; v < kNodes; ++v) {
    add(endpoints[std::uniform_int_distribution<std::size_t>(0, endpoints.size() - 1)(rng)],
        v);
  }
  std::uniform_int_distribution<NodeId> any(0, kNodes - 1);
  while (edges.size() < kEdges) {
    const NodeId a = any(rng);
    const NodeId b = any(rng);
    if (a == b || present.count({std::min(a, b), std::max(a, b)})) continue;
    add(a, b);
  }
  return from_edges(kNodes, edges, 1e9, "pop");
}

std::optional<std::filesystem::path> find_colt_graphml() {
  if (const char* env = std::getenv("PMSR_COLT_GRAPHML"); env && *env) {
    if (std::filesystem::exists(env)) return std::filesystem::path(env);
  }
  for (const char* name : {"Colt.graphml", "colt.graphml"}) {
    auto p = data_dir() / name;
    if (std::filesystem::exists(p)) return p;
  }
  return std::nullopt;
}

}  // namespace pmsr::testing
