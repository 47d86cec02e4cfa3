#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "pmsr/topology.hpp"

namespace pmsr {

enum class SidKind : std::uint8_t {
  kNode,        // ECMP-aware shortest path toward a node
  kDirectLink,  // like kNode, but an adjacent node always takes the direct link
  kAdjLocal,    // one outgoing link, meaningful only at its source node
  kAdjGlobal,   // one link, steered to its source node from anywhere
};

/// Segment identifier, abstract of any numbering plane. Node and
/// direct-link SIDs designate a node; adjacency SIDs designate a directed
/// link. Ordering is (kind, reference).
class Sid {
 public:
  static constexpr Sid node(NodeId target) { return Sid(SidKind::kNode, target); }
  static constexpr Sid direct_link(NodeId target) {
    return Sid(SidKind::kDirectLink, target);
  }
  static constexpr Sid adj_local(LinkId link) { return Sid(SidKind::kAdjLocal, link); }
  static constexpr Sid adj_global(LinkId link) { return Sid(SidKind::kAdjGlobal, link); }

  constexpr SidKind kind() const noexcept { return kind_; }
  constexpr bool is_adjacency() const noexcept {
    return kind_ == SidKind::kAdjLocal || kind_ == SidKind::kAdjGlobal;
  }
  /// Node referenced by a node or direct-link SID.
  constexpr NodeId node_ref() const noexcept { return ref_; }
  /// Link referenced by an adjacency SID.
  constexpr LinkId link_ref() const noexcept { return ref_; }

  constexpr auto operator<=>(const Sid&) const = default;

 private:
  constexpr Sid(SidKind kind, std::uint32_t ref) : kind_(kind), ref_(ref) {}

  SidKind kind_;
  std::uint32_t ref_;
};

/// Node the packet is at once the segment completes.
NodeId target_node(const Topology& topology, const Sid& sid);

/// Human-readable form: N:name, D:name, A:src->dst, G:src->dst.
std::string to_string(const Topology& topology, const Sid& sid);
Sid parse_sid(const Topology& topology, std::string_view text);

enum class Plane : std::uint8_t { kMpls, kIpv6 };

struct Ipv6Address {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  std::string to_string() const;
  auto operator<=>(const Ipv6Address&) const = default;
};

using MplsLabel = std::uint32_t;
inline constexpr MplsLabel kMaxMplsLabel = (1u << 20) - 1;
/// First label of the per-node local block used for local Adj-SIDs.
inline constexpr MplsLabel kLocalAdjLabelBase = 16;

/// Numbering plane used to turn SIDs into wire values. Node and
/// direct-link SIDs are pure functions of the loopback address.
struct SidNumbering {
  Plane plane = Plane::kMpls;
  unsigned index_bits = 16;
  MplsLabel mpls_base = 100000;
  std::uint64_t ipv6_prefix = 0xfd00'0000'0000'0000ull;

  /// Throws ConfigError when the two global label blocks do not fit into
  /// the 20-bit label space or collide with reserved labels.
  void check() const;
};

MplsLabel node_sid_mpls(const SidNumbering& num, Ipv4Address loopback);
MplsLabel dl_sid_mpls(const SidNumbering& num, Ipv4Address loopback);

/// IPv6 loopback of a node: prefix || device part, where the device part
/// is the IPv4 loopback and must be odd. Throws ConfigError otherwise.
Ipv6Address node_sid_ipv6(const SidNumbering& num, const Node& node);
/// Even neighbour of the node SID (device part + 1).
Ipv6Address dl_sid_ipv6(const SidNumbering& num, const Node& node);

using EncodedSid = std::variant<MplsLabel, Ipv6Address>;
std::string format_encoded(const EncodedSid& value);

/// Encodes and decodes SIDs for one topology and numbering plane.
///
/// Local Adj-SIDs use a per-node block: MPLS label kLocalAdjLabelBase + k,
/// or IPv6 (prefix + 1) || (loopback << 16 | k), where k is the link's
/// position in its source's outgoing list. Global Adj-SIDs only exist on
/// the IPv6 plane, as (prefix + 2) || (loopback << 16 | k).
class SidCodec {
 public:
  SidCodec(const Topology& topology, SidNumbering numbering);

  const SidNumbering& numbering() const noexcept { return num_; }

  EncodedSid encode(const Sid& sid) const;
  /// `at` is the node interpreting the value; needed for local MPLS
  /// adjacency labels, ignored otherwise.
  std::optional<Sid> decode(const EncodedSid& value,
                            std::optional<NodeId> at = std::nullopt) const;

 private:
  const Topology* topology_;
  SidNumbering num_;
  std::map<EncodedSid, Sid> global_;
  std::map<std::uint32_t, NodeId> by_loopback_;
};

}  // namespace pmsr
