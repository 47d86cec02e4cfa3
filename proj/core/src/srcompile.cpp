#include "pmsr/srcompile.hpp"

#include <algorithm>
#include <chrono>

namespace pmsr {
namespace {

// tep is simple, so it is the one shortest path iff SPN is 1 and its cost
// is the distance.
bool only_shortest(const Topology& topology, const RoutingView& rv,
                   std::span<const NodeId> tep) {
  const NodeId x = tep.front();
  const NodeId y = tep.back();
  return rv.spn(x, y) == 1 && path_cost(topology, tep) == rv.distance(x, y);
}

}  // namespace

SrPath t_srp(const Topology& topology, const RoutingView& rv, const HopPath& path) {
  SrPath out{path.source(), {}};
  const std::size_t last = path.size() - 1;
  std::size_t x = 0;
  while (x < last) {
    std::size_t y = last;
    while (true) {
      if (only_shortest(topology, rv, path.tep_at(x, y))) {
        out.sids.push_back(Sid::node(path[y]));
        break;
      }
      if (y == x + 1) {
        out.sids.push_back(Sid::adj_local(*topology.find_link(path[x], path[y])));
        break;
      }
      --y;
    }
    x = y;
  }
  return out;
}

SrPath dl_srp(const Topology& topology, const RoutingView& rv, const HopPath& path,
              const SrPath& traditional) {
  SrPath out{traditional.source, {}};
  const auto& in = traditional.sids;
  for (std::size_t i = 0; i < in.size(); ++i) {
    const Sid& sid = in[i];
    if (sid.is_adjacency()) {
      out.sids.push_back(Sid::direct_link(topology.link(sid.link_ref()).dst));
      continue;
    }
    if (i + 1 == in.size() || !in[i + 1].is_adjacency()) {
      out.sids.push_back(sid);
      continue;
    }
    const NodeId prev = i == 0 ? traditional.source : target_node(topology, in[i - 1]);
    const NodeId z = topology.link(in[i + 1].link_ref()).dst;
    bool keep = spn_star(rv, topology, prev, z) > 1;
    if (!keep) {
      const auto walk = unique_biased_path(rv, topology, prev, z);
      const auto tep = path.tep(prev, z);
      keep = !walk || !std::equal(walk->begin(), walk->end(), tep.begin(), tep.end());
    }
    if (keep) out.sids.push_back(sid);
  }
  return out;
}

CompileResult compile_all(const Topology& topology, const RoutingView& rv,
                          const Assignment& assignment, CompileMode mode) {
  CompileResult result;
  if (assignment.accepted.empty()) return result;

  const auto start = std::chrono::steady_clock::now();
  std::vector<const AcceptedFlow*> order;
  order.reserve(assignment.accepted.size());
  for (const auto& a : assignment.accepted) order.push_back(&a);
  std::sort(order.begin(), order.end(),
            [](const auto* a, const auto* b) { return a->flow.id < b->flow.id; });

  result.flows.reserve(order.size());
  for (const auto* a : order) {
    const HopPath path(topology, a->path);
    SrPath srp = t_srp(topology, rv, path);
    if (mode == CompileMode::kPmsr) srp = dl_srp(topology, rv, path, srp);
    ++result.histogram[srp.size()];
    result.flows.push_back(CompiledFlow{a->flow.id, std::move(srp)});
  }
  result.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

}  // namespace pmsr
