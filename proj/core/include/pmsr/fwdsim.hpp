#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pmsr/forwarding_table.hpp"
#include "pmsr/hop_path.hpp"
#include "pmsr/sid.hpp"

namespace pmsr {

/// Segment list pushed at `source`. The source itself is not a segment.
struct SrPath {
  NodeId source = 0;
  std::vector<Sid> sids;

  std::size_t size() const noexcept { return sids.size(); }
  bool operator==(const SrPath&) const = default;
};

using LinkRoute = std::vector<LinkId>;

/// Every link sequence the packet can take over all ECMP choices.
struct RealizedRoutes {
  std::set<LinkRoute> routes;

  bool deterministic() const noexcept { return routes.size() == 1; }
};

struct TraceHop {
  std::size_t branch = 0;
  NodeId node = 0;
  std::optional<Sid> active;
  std::string action;
};

struct SimulateOptions {
  /// Abort with OverflowError once this many distinct branches exist.
  std::size_t max_branches = 1u << 16;
  /// When set, receives one line per hop of every branch.
  std::vector<TraceHop>* trace = nullptr;
};

/// Forwards a packet carrying `srp` through the node tables, following
/// every ECMP branch. Throws SimulationError for a local Adj-SID met away
/// from its node or a branch longer than node_count * |sids| hops.
RealizedRoutes simulate(const ForwardingState& state, const SrPath& srp,
                        const SimulateOptions& options = {});

/// Node sequence of a link route starting at `source`.
NodePath route_nodes(const Topology& topology, NodeId source, const LinkRoute& route);

/// True iff the SR path deterministically realizes exactly `path`.
bool check_congruence(const ForwardingState& state, const SrPath& srp,
                      const HopPath& path);

/// One trace line: `b<branch> <node> | <active SID> | <action>`.
std::string format_trace(const Topology& topology, const TraceHop& hop);

enum class SidAlphabet { kTraditional, kPmsr };

enum class AlphabetScope {
  kOnPath,        // SIDs designating nodes/links of the hop-by-hop path
  kUnrestricted,  // every node and link of the topology
};

/// Shortest congruent SR path found by breadth-first search over SID
/// sequences of growing length; ties go to the lexicographically smallest
/// sequence ordered by (target node id, kind). Traditional alphabet:
/// Node-SIDs and local Adj-SIDs. PMSR alphabet: Node-SIDs and DL-SIDs.
/// Meant for small paths; throws OverflowError if nothing is found within
/// 2 * link_count segments.
SrPath oracle_min_sr(const ForwardingState& state, const HopPath& path,
                     SidAlphabet alphabet,
                     AlphabetScope scope = AlphabetScope::kOnPath);

}  // namespace pmsr
