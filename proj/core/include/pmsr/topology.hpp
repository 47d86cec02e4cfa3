#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pmsr {

using NodeId = std::uint32_t;
using LinkId = std::uint32_t;
using Cost = std::int64_t;

/// IPv4 address in host byte order.
struct Ipv4Address {
  std::uint32_t value = 0;

  static Ipv4Address parse(std::string_view dotted);
  std::string to_string() const;

  auto operator<=>(const Ipv4Address&) const = default;
};

/// Loopbacks handed out when a topology file does not specify one:
/// 10.0.0.1, 10.0.0.3, 10.0.0.5, ... (always odd).
inline constexpr Ipv4Address kLoopbackBase{0x0A000001u};
Ipv4Address auto_loopback(NodeId index);

struct Node {
  NodeId id = 0;
  std::string name;
  Ipv4Address loopback;

  bool operator==(const Node&) const = default;
};

/// Directed link. Cost is the IGP metric, capacity is in b/s.
struct Link {
  NodeId src = 0;
  NodeId dst = 0;
  Cost cost = 1;
  double capacity = 1.0;

  bool operator==(const Link&) const = default;
};

/// Directed, weighted, capacitated graph. Node ids are dense indices.
/// Construction only checks that link endpoints exist; model invariants
/// are reported by validate().
class Topology {
 public:
  Topology() = default;
  Topology(std::vector<Node> nodes, std::vector<Link> links);

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t link_count() const noexcept { return links_.size(); }

  std::span<const Node> nodes() const noexcept { return nodes_; }
  std::span<const Link> links() const noexcept { return links_; }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  const Link& link(LinkId id) const { return links_.at(id); }

  /// Outgoing links of `id`, ordered by destination id.
  std::span<const LinkId> out_links(NodeId id) const;

  std::optional<LinkId> find_link(NodeId src, NodeId dst) const;
  bool adjacent(NodeId src, NodeId dst) const {
    return find_link(src, dst).has_value();
  }
  std::optional<NodeId> find_node(std::string_view name) const;

  /// Copy with one link's metric replaced.
  Topology with_link_cost(LinkId id, Cost cost) const;

  friend bool operator==(const Topology& a, const Topology& b) {
    return a.nodes_ == b.nodes_ && a.links_ == b.links_;
  }

 private:
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::vector<std::size_t> out_offsets_;
  std::vector<LinkId> out_index_;
  std::unordered_map<std::uint64_t, LinkId> link_lookup_;
  std::unordered_map<std::string, NodeId> name_lookup_;
};

/// Checks every topology invariant and returns one diagnostic per
/// violation; empty means valid. `index_bits` is the loopback suffix width
/// used for MPLS SID derivation.
std::vector<std::string> validate(const Topology& topology,
                                  unsigned index_bits = 16);

/// Native JSON topology: undirected edges expand into two directed links.
/// Throws ParseError or ValidationError.
Topology parse_json(std::string_view text);
Topology load_json(const std::filesystem::path& path);

/// Serializes a symmetric topology back to the native JSON schema.
/// Throws ValidationError if some link has no identical reverse link.
std::string emit_json(const Topology& topology);

struct GraphmlImport {
  Topology topology;
  std::vector<std::string> warnings;
};

/// Topology Zoo GraphML subset. Every link gets `default_cost` and
/// `default_capacity`; parallel edges are collapsed with a warning.
GraphmlImport parse_graphml(std::string_view text, Cost default_cost,
                            double default_capacity);
GraphmlImport load_graphml(const std::filesystem::path& path,
                           Cost default_cost, double default_capacity);

/// Dispatches on extension: .graphml uses load_graphml with cost 1 and
/// capacity 1e9, anything else load_json.
Topology load_topology(const std::filesystem::path& path);

}  // namespace pmsr
