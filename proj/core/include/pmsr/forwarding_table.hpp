#pragma once

#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pmsr/routing.hpp"
#include "pmsr/sid.hpp"
#include "pmsr/topology.hpp"

namespace pmsr {

/// Pointer to the owner's IGP route toward `destination`'s loopback. The
/// next hops are looked up when the action is resolved, so a routing
/// change never requires touching the entry.
struct ForwardVia {
  NodeId destination;
  bool operator==(const ForwardVia&) const = default;
};

/// Fixed outgoing link, independent of routing.
struct ForwardDirect {
  LinkId link;
  bool operator==(const ForwardDirect&) const = default;
};

/// The SID designates the node itself: pop and process the next one.
struct PopAndContinue {
  bool operator==(const PopAndContinue&) const = default;
};

using Action = std::variant<ForwardVia, ForwardDirect, PopAndContinue>;

struct TableEntry {
  Sid sid;
  EncodedSid encoded;
  Action action;
};

/// SID forwarding state of one node: one Node-SID and one DL-SID entry per
/// remote node, ordered by target id with the Node-SID first.
class ForwardingTable {
 public:
  ForwardingTable(NodeId owner, std::vector<TableEntry> entries);

  NodeId owner() const noexcept { return owner_; }
  std::span<const TableEntry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  const TableEntry* find(const EncodedSid& value) const;
  const TableEntry* find(const Sid& sid) const;

  /// Action for a node or direct-link SID: PopAndContinue when it targets
  /// the owner. Throws std::out_of_range for SIDs without an entry.
  Action action_for(const Sid& sid) const;

  /// Next-hop nodes the action currently resolves to under `rv`.
  std::vector<NodeId> resolve(const Action& action, const Topology& topology,
                              const RoutingView& rv) const;

 private:
  NodeId owner_;
  std::vector<TableEntry> entries_;
  std::map<EncodedSid, std::size_t> by_value_;
  std::map<Sid, std::size_t> by_sid_;
};

/// Populates `owner`'s table: for every remote node m, Node-SID(m) points
/// at the route toward m, DL-SID(m) at the direct link owner->m when one
/// exists and at the same route otherwise.
ForwardingTable build_forwarding_table(const Topology& topology, const RoutingView& rv,
                                       const SidNumbering& numbering, NodeId owner);

/// Dump lines `kind target encoded action`, one per entry, in table order.
std::string dump_table(const Topology& topology, const RoutingView& rv,
                       const SidCodec& codec, const ForwardingTable& table);

/// Tables of every node plus the topology and routing they resolve
/// against. Holds references: `topology` and `rv` must outlive it.
class ForwardingState {
 public:
  ForwardingState(const Topology& topology, const RoutingView& rv,
                  SidNumbering numbering = {});

  const Topology& topology() const noexcept { return *topology_; }
  const RoutingView& routing() const noexcept { return *rv_; }
  const SidCodec& codec() const noexcept { return codec_; }
  const ForwardingTable& table(NodeId node) const { return tables_.at(node); }
  std::span<const ForwardingTable> tables() const noexcept { return tables_; }

 private:
  const Topology* topology_;
  const RoutingView* rv_;
  SidCodec codec_;
  std::vector<ForwardingTable> tables_;
};

}  // namespace pmsr
