#include "pmsr/fwdsim.hpp"

#include <stdexcept>

#include "pmsr/error.hpp"

namespace pmsr {
namespace {

struct Hop {
  NodeId node;
  std::optional<Sid> active;
  std::string action;
};

struct Branch {
  NodeId at;
  std::size_t next_sid = 0;
  LinkRoute route;
  std::vector<Hop> history;
};

std::string names(const Topology& topology, std::span<const NodeId> nodes) {
  std::string out;
  for (NodeId n : nodes) {
    if (!out.empty()) out += '|';
    out += topology.node(n).name;
  }
  return out;
}

}  // namespace

RealizedRoutes simulate(const ForwardingState& state, const SrPath& srp,
                        const SimulateOptions& options) {
  const auto& topology = state.topology();
  const auto& rv = state.routing();
  const std::size_t hop_limit = topology.node_count() * srp.sids.size();
  const bool tracing = options.trace != nullptr;

  RealizedRoutes result;
  std::size_t branches = 1;
  std::size_t finished = 0;
  std::vector<Branch> stack;
  stack.push_back(Branch{srp.source, 0, {}, {}});

  while (!stack.empty()) {
    Branch b = std::move(stack.back());
    stack.pop_back();

    while (b.next_sid < srp.sids.size()) {
      const Sid sid = srp.sids[b.next_sid];
      auto note = [&](std::string action) {
        if (tracing) b.history.push_back(Hop{b.at, sid, std::move(action)});
      };

      // Candidate next hops for this node and segment, or a pop.
      std::vector<NodeId> hops;
      bool pop_on_arrival = false;
      switch (sid.kind()) {
        case SidKind::kNode:
        case SidKind::kDirectLink: {
          const auto& table = state.table(b.at);
          const Action action = table.action_for(sid);
          if (std::holds_alternative<PopAndContinue>(action)) {
            note("pop");
            ++b.next_sid;
            continue;
          }
          hops = table.resolve(action, topology, rv);
          if (hops.empty()) {
            throw SimulationError("no route from '" + topology.node(b.at).name +
                                  "' for " + to_string(topology, sid));
          }
          note((std::holds_alternative<ForwardDirect>(action) ? "direct " : "via ") +
               names(topology, hops));
          break;
        }
        case SidKind::kAdjLocal:
        case SidKind::kAdjGlobal: {
          const auto& link = topology.link(sid.link_ref());
          if (b.at == link.src) {
            hops = {link.dst};
            pop_on_arrival = true;
            note("adjacency " + topology.node(link.dst).name + ", pop on arrival");
          } else if (sid.kind() == SidKind::kAdjLocal) {
            throw SimulationError("local Adj-SID " + to_string(topology, sid) +
                                  " reached node '" + topology.node(b.at).name +
                                  "' instead of its owner");
          } else {
            auto toward = rv.nexthops(b.at, link.src);
            if (toward.empty()) {
              throw SimulationError("no route toward owner of " + to_string(topology, sid));
            }
            hops.assign(toward.begin(), toward.end());
            note("via " + names(topology, hops) + " toward " + topology.node(link.src).name);
          }
          break;
        }
      }

      // Fork: every extra next hop becomes its own branch. Pushed in
      // reverse so branches are explored in ascending next-hop order.
      branches += hops.size() - 1;
      if (branches > options.max_branches) {
        throw OverflowError("simulate: more than " + std::to_string(options.max_branches) +
                            " ECMP branches");
      }
      for (std::size_t i = hops.size(); i-- > 1;) {
        Branch fork = b;
        fork.route.push_back(*topology.find_link(b.at, hops[i]));
        fork.at = hops[i];
        if (pop_on_arrival) ++fork.next_sid;
        stack.push_back(std::move(fork));
      }
      b.route.push_back(*topology.find_link(b.at, hops.front()));
      b.at = hops.front();
      if (pop_on_arrival) ++b.next_sid;
      if (b.route.size() > hop_limit) {
        throw SimulationError("loop guard: branch exceeded " + std::to_string(hop_limit) +
                              " hops");
      }
    }

    if (tracing) {
      for (auto& hop : b.history) {
        options.trace->push_back(TraceHop{finished, hop.node, hop.active, std::move(hop.action)});
      }
      options.trace->push_back(TraceHop{finished, b.at, std::nullopt, "done"});
    }
    ++finished;
    result.routes.insert(std::move(b.route));
  }
  return result;
}

NodePath route_nodes(const Topology& topology, NodeId source, const LinkRoute& route) {
  NodePath out{source};
  for (LinkId id : route) out.push_back(topology.link(id).dst);
  return out;
}

bool check_congruence(const ForwardingState& state, const SrPath& srp,
                      const HopPath& path) {
  if (srp.source != path.source()) {
    throw std::invalid_argument("SR path and hop-by-hop path start at different nodes");
  }
  const auto realized = simulate(state, srp);
  return realized.deterministic() &&
         *realized.routes.begin() == path.links(state.topology());
}

std::string format_trace(const Topology& topology, const TraceHop& hop) {
  return "b" + std::to_string(hop.branch) + " " + topology.node(hop.node).name + " | " +
         (hop.active ? to_string(topology, *hop.active) : std::string("-")) + " | " +
         hop.action;
}

}  // namespace pmsr
