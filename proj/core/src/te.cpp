#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "pmsr/te.hpp"

namespace pmsr {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

double link_cost_term(double load, double capacity) { return load / (capacity - load); }

// Incremental state of the assignment. Each link keeps the indices of the
// accepted flows crossing it, sorted, and its load is always re-summed in
// that order, which is exactly what link_loads() does.
class LoadBook {
 public:
  LoadBook(const Topology& topology, const std::vector<AcceptedFlow>& accepted)
      : topology_(topology), accepted_(accepted),
        members_(topology.link_count()), load_(topology.link_count(), 0.0) {}

  const std::vector<double>& load() const { return load_; }
  double load(LinkId j) const { return load_[j]; }

  void insert(std::size_t flow, const std::vector<LinkId>& links) {
    for (LinkId j : links) {
      auto& m = members_[j];
      m.insert(std::upper_bound(m.begin(), m.end(), flow), flow);
      load_[j] = sum(m);
    }
  }

  void erase(std::size_t flow, const std::vector<LinkId>& links) {
    for (LinkId j : links) {
      auto& m = members_[j];
      m.erase(std::lower_bound(m.begin(), m.end(), flow));
      load_[j] = sum(m);
    }
  }

  /// Whether adding `flow` keeps every link of `links` strictly below
  /// capacity, evaluated with the exact summation order used for storage.
  bool fits(std::size_t flow, double rate, const std::vector<LinkId>& links) const {
    for (LinkId j : links) {
      const auto& m = members_[j];
      double total = 0.0;
      bool added = false;
      for (std::size_t i : m) {
        if (!added && flow < i) {
          total += rate;
          added = true;
        }
        total += accepted_[i].flow.rate;
      }
      if (!added) total += rate;
      if (!(total < topology_.link(j).capacity)) return false;
    }
    return true;
  }

 private:
  double sum(const std::vector<std::size_t>& m) const {
    double total = 0.0;
    for (std::size_t i : m) total += accepted_[i].flow.rate;
    return total;
  }

  const Topology& topology_;
  const std::vector<AcceptedFlow>& accepted_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<double> load_;
};

// Cheapest path src -> dst under w = 1 / (c - load - rate), restricted to
// links with residual capacity above `rate`.
std::optional<NodePath> cheapest_path(const Topology& topology,
                                      const std::vector<double>& load, NodeId src,
                                      NodeId dst, double rate) {
  const auto n = topology.node_count();
  std::vector<double> dist(n, kInfinity);
  std::vector<NodeId> parent(n, src);
  std::vector<bool> done(n, false);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[src] = 0.0;
  queue.emplace(0.0, src);
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (done[v]) continue;
    done[v] = true;
    if (v == dst) break;
    for (LinkId id : topology.out_links(v)) {
      const auto& l = topology.link(id);
      const double residual = l.capacity - load[id] - rate;
      if (!(residual > 0.0) || done[l.dst]) continue;
      const double candidate = d + 1.0 / residual;
      if (candidate < dist[l.dst]) {
        dist[l.dst] = candidate;
        parent[l.dst] = v;
        queue.emplace(candidate, l.dst);
      }
    }
  }
  if (!done[dst]) return std::nullopt;
  NodePath path{dst};
  for (NodeId v = dst; v != src; v = parent[v]) path.push_back(parent[v]);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<LinkId> path_links(const Topology& topology, const NodePath& path) {
  std::vector<LinkId> out;
  out.reserve(path.size());
  for (std::size_t i = 1; i < path.size(); ++i) {
    out.push_back(*topology.find_link(path[i - 1], path[i]));
  }
  return out;
}

// Change of the network cost when `rate` is added on `links`.
double cost_delta(const Topology& topology, const std::vector<double>& load,
                  const std::vector<LinkId>& links, double rate) {
  double delta = 0.0;
  for (LinkId j : links) {
    const double c = topology.link(j).capacity;
    delta += link_cost_term(load[j] + rate, c) - link_cost_term(load[j], c);
  }
  return delta;
}

}  // namespace

double network_cost(const Topology& topology, const std::vector<double>& load) {
  double total = 0.0;
  for (LinkId j = 0; j < topology.link_count(); ++j) {
    total += link_cost_term(load[j], topology.link(j).capacity);
  }
  return total;
}

Assignment assign_flows(const Topology& topology, const std::vector<Flow>& flows,
                        const AssignOptions& options) {
  for (const auto& f : flows) {
    if (f.src == f.dst || !(f.rate > 0.0) || f.src >= topology.node_count() ||
        f.dst >= topology.node_count()) {
      throw std::invalid_argument("invalid flow " + std::to_string(f.id));
    }
  }

  Assignment result;
  auto& accepted = result.accepted;
  accepted.reserve(flows.size());
  std::vector<std::vector<LinkId>> links_of;
  LoadBook book(topology, accepted);

  std::vector<std::size_t> order(flows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (flows[a].rate != flows[b].rate) return flows[a].rate > flows[b].rate;
    return flows[a].id < flows[b].id;
  });

  for (std::size_t k : order) {
    const auto& f = flows[k];
    auto path = cheapest_path(topology, book.load(), f.src, f.dst, f.rate);
    std::vector<LinkId> links;
    const std::size_t index = accepted.size();
    if (path) {
      links = path_links(topology, *path);
      accepted.push_back(AcceptedFlow{f, *path});
      if (!book.fits(index, f.rate, links)) {
        accepted.pop_back();
        path.reset();
      }
    }
    if (!path) {
      result.rejected.push_back(f.id);
      continue;
    }
    book.insert(index, links);
    links_of.push_back(std::move(links));
  }
  std::sort(result.rejected.begin(), result.rejected.end());

  double cost = network_cost(topology, book.load());
  result.cost_history.push_back(cost);

  for (int cycle = 0; cycle < options.max_cycles && !accepted.empty(); ++cycle) {
    std::size_t moved = 0;
    for (std::size_t i = 0; i < accepted.size(); ++i) {
      const auto& f = accepted[i].flow;
      book.erase(i, links_of[i]);
      auto candidate = cheapest_path(topology, book.load(), f.src, f.dst, f.rate);
      if (candidate && *candidate != accepted[i].path) {
        auto links = path_links(topology, *candidate);
        const double old_delta = cost_delta(topology, book.load(), links_of[i], f.rate);
        const double new_delta = cost_delta(topology, book.load(), links, f.rate);
        if (new_delta < old_delta - 1e-12 * std::max(1.0, old_delta) &&
            book.fits(i, f.rate, links)) {
          accepted[i].path = std::move(*candidate);
          links_of[i] = std::move(links);
          ++moved;
        }
      }
      book.insert(i, links_of[i]);
    }
    ++result.cycles;
    const double next = network_cost(topology, book.load());
    result.cost_history.push_back(next);
    const double gain = cost - next;
    cost = next;
    if (moved == 0 || gain <= options.min_improvement) break;
  }

  result.load = book.load();
  return result;
}

std::vector<double> link_loads(const Topology& topology, const Assignment& assignment) {
  std::vector<double> load(topology.link_count(), 0.0);
  for (const auto& a : assignment.accepted) {
    for (std::size_t i = 1; i < a.path.size(); ++i) {
      load[*topology.find_link(a.path[i - 1], a.path[i])] += a.flow.rate;
    }
  }
  return load;
}

}  // namespace pmsr
