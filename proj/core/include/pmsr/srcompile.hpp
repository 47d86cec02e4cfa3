#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "pmsr/fwdsim.hpp"
#include "pmsr/hop_path.hpp"
#include "pmsr/routing.hpp"
#include "pmsr/te.hpp"

namespace pmsr {

/// Traditional SR path for `path`: Node-SIDs and local Adj-SIDs. Greedy:
/// from the current waypoint x, jump with a Node-SID to the farthest y
/// whose sub-path x..y is the only shortest path; fall back to the
/// Adj-SID of the next link when not even one hop qualifies.
SrPath t_srp(const Topology& topology, const RoutingView& rv, const HopPath& path);

/// Rewrites a t_srp result into Node-SIDs and DL-SIDs. Every Adj-SID
/// e(x, z) becomes DlSid(z); the Node-SID in front of it is dropped when
/// the direct-links biased walk from the previous waypoint to z is unique
/// and follows `path`.
SrPath dl_srp(const Topology& topology, const RoutingView& rv, const HopPath& path,
              const SrPath& traditional);

enum class CompileMode { kTraditional, kPmsr };

struct CompiledFlow {
  FlowId id = 0;
  SrPath srp;
};

struct CompileResult {
  std::vector<CompiledFlow> flows;  // ascending flow id
  /// segment count -> number of flows
  std::map<std::size_t, std::size_t> histogram;
  double elapsed_ms = 0.0;
};

/// SR paths for every accepted flow of `assignment`.
CompileResult compile_all(const Topology& topology, const RoutingView& rv,
                          const Assignment& assignment, CompileMode mode);

}  // namespace pmsr
