#include "pmsr/forwarding_table.hpp"

#include <sstream>
#include <stdexcept>

namespace pmsr {

ForwardingTable::ForwardingTable(NodeId owner, std::vector<TableEntry> entries)
    : owner_(owner), entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    by_value_.emplace(entries_[i].encoded, i);
    by_sid_.emplace(entries_[i].sid, i);
  }
}

const TableEntry* ForwardingTable::find(const EncodedSid& value) const {
  auto it = by_value_.find(value);
  return it == by_value_.end() ? nullptr : &entries_[it->second];
}

const TableEntry* ForwardingTable::find(const Sid& sid) const {
  auto it = by_sid_.find(sid);
  return it == by_sid_.end() ? nullptr : &entries_[it->second];
}

Action ForwardingTable::action_for(const Sid& sid) const {
  if (!sid.is_adjacency() && sid.node_ref() == owner_) return PopAndContinue{};
  if (const auto* entry = find(sid)) return entry->action;
  throw std::out_of_range("no forwarding entry for SID");
}

std::vector<NodeId> ForwardingTable::resolve(const Action& action,
                                             const Topology& topology,
                                             const RoutingView& rv) const {
  if (const auto* via = std::get_if<ForwardVia>(&action)) {
    auto hops = rv.nexthops(owner_, via->destination);
    return {hops.begin(), hops.end()};
  }
  if (const auto* direct = std::get_if<ForwardDirect>(&action)) {
    return {topology.link(direct->link).dst};
  }
  return {};
}

ForwardingTable build_forwarding_table(const Topology& topology, const RoutingView& rv,
                                       const SidNumbering& numbering, NodeId owner) {
  SidCodec codec(topology, numbering);
  std::vector<TableEntry> entries;
  entries.reserve(2 * (topology.node_count() - 1));
  for (const auto& remote : topology.nodes()) {
    if (remote.id == owner) continue;
    if (!rv.reachable(owner, remote.id)) {
      throw std::invalid_argument("no route from '" + topology.node(owner).name +
                                  "' to loopback of '" + remote.name + "'");
    }
    const auto node_sid = Sid::node(remote.id);
    const auto dl_sid = Sid::direct_link(remote.id);
    entries.push_back({node_sid, codec.encode(node_sid), ForwardVia{remote.id}});
    if (auto link = topology.find_link(owner, remote.id)) {
      entries.push_back({dl_sid, codec.encode(dl_sid), ForwardDirect{*link}});
    } else {
      entries.push_back({dl_sid, codec.encode(dl_sid), ForwardVia{remote.id}});
    }
  }
  return ForwardingTable(owner, std::move(entries));
}

std::string dump_table(const Topology& topology, const RoutingView& rv,
                       const SidCodec& codec, const ForwardingTable& table) {
  std::ostringstream out;
  for (const auto& entry : table.entries()) {
    out << (entry.sid.kind() == SidKind::kNode ? "NodeSid" : "DlSid") << ' '
        << topology.node(entry.sid.node_ref()).name << ' '
        << format_encoded(codec.encode(entry.sid)) << ' ';
    if (const auto* via = std::get_if<ForwardVia>(&entry.action)) {
      out << "via:" << topology.node(via->destination).name << '[';
      bool first = true;
      for (NodeId hop : table.resolve(entry.action, topology, rv)) {
        out << (first ? "" : ",") << topology.node(hop).name;
        first = false;
      }
      out << ']';
    } else if (const auto* direct = std::get_if<ForwardDirect>(&entry.action)) {
      const auto& l = topology.link(direct->link);
      out << "direct:" << topology.node(l.src).name << "->" << topology.node(l.dst).name;
    } else {
      out << "pop";
    }
    out << '\n';
  }
  return out.str();
}

ForwardingState::ForwardingState(const Topology& topology, const RoutingView& rv,
                                 SidNumbering numbering)
    : topology_(&topology), rv_(&rv), codec_(topology, numbering) {
  tables_.reserve(topology.node_count());
  for (NodeId v = 0; v < topology.node_count(); ++v) {
    tables_.push_back(build_forwarding_table(topology, rv, numbering, v));
  }
}

}  // namespace pmsr
