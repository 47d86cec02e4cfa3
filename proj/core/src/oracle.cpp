#include <algorithm>
#include <tuple>

#include "pmsr/error.hpp"
#include "pmsr/fwdsim.hpp"

namespace pmsr {
namespace {

struct Prefix {
  std::vector<Sid> sids;
  std::size_t position;  // index on the hop-by-hop path reached so far
};

std::vector<Sid> build_alphabet(const Topology& topology, const HopPath& path,
                                SidAlphabet alphabet, AlphabetScope scope) {
  std::vector<NodeId> nodes;
  std::vector<LinkId> links;
  if (scope == AlphabetScope::kOnPath) {
    nodes.assign(path.nodes().begin(), path.nodes().end());
    links = path.links(topology);
  } else {
    for (NodeId v = 0; v < topology.node_count(); ++v) nodes.push_back(v);
    for (LinkId l = 0; l < topology.link_count(); ++l) links.push_back(l);
  }

  std::vector<Sid> out;
  for (NodeId v : nodes) {
    out.push_back(Sid::node(v));
    if (alphabet == SidAlphabet::kPmsr) out.push_back(Sid::direct_link(v));
  }
  if (alphabet == SidAlphabet::kTraditional) {
    for (LinkId l : links) out.push_back(Sid::adj_local(l));
  }
  auto key = [&](const Sid& s) {
    return std::tuple(target_node(topology, s), s.kind(),
                      s.is_adjacency() ? topology.link(s.link_ref()).src : 0u);
  };
  std::sort(out.begin(), out.end(),
            [&](const Sid& a, const Sid& b) { return key(a) < key(b); });
  return out;
}

// Position on `path` reached by the deterministic route of `srp`, or
// nullopt when the route branches, errors or leaves the path.
std::optional<std::size_t> reached_position(const ForwardingState& state,
                                            const HopPath& path, const SrPath& srp) {
  RealizedRoutes realized;
  try {
    realized = simulate(state, srp);
  } catch (const SimulationError&) {
    return std::nullopt;
  } catch (const OverflowError&) {
    return std::nullopt;
  }
  if (!realized.deterministic()) return std::nullopt;
  const auto nodes = route_nodes(state.topology(), srp.source, *realized.routes.begin());
  if (nodes.size() > path.size() ||
      !std::equal(nodes.begin(), nodes.end(), path.nodes().begin())) {
    return std::nullopt;
  }
  return nodes.size() - 1;
}

}  // namespace

SrPath oracle_min_sr(const ForwardingState& state, const HopPath& path,
                     SidAlphabet alphabet, AlphabetScope scope) {
  const auto& topology = state.topology();
  SrPath result{path.source(), {}};
  if (path.link_count() == 0) return result;

  const auto symbols = build_alphabet(topology, path, alphabet, scope);
  const std::size_t goal = path.size() - 1;
  const std::size_t max_length = 2 * path.link_count();

  // Level-by-level search. A prefix of a congruent SR path must itself
  // route deterministically along a prefix of the path, so only such
  // prefixes are extended; a segment that does not move the packet can be
  // dropped from any solution, so progress is required. Within a level the
  // first prefix reaching a position is the lexicographically smallest,
  // and its continuations dominate those of later ones.
  std::vector<Prefix> level{Prefix{{}, 0}};
  for (std::size_t length = 1; length <= max_length; ++length) {
    std::vector<Prefix> next;
    std::vector<bool> taken(path.size(), false);
    for (const auto& prefix : level) {
      for (const auto& sid : symbols) {
        SrPath candidate{path.source(), prefix.sids};
        candidate.sids.push_back(sid);
        auto position = reached_position(state, path, candidate);
        if (!position || *position <= prefix.position) continue;
        if (*position == goal) return candidate;
        if (!taken[*position]) {
          taken[*position] = true;
          next.push_back(Prefix{std::move(candidate.sids), *position});
        }
      }
    }
    level = std::move(next);
    if (level.empty()) break;
  }
  throw OverflowError("oracle: no congruent SR path within " +
                      std::to_string(max_length) + " segments");
}

}  // namespace pmsr
