#include "pmsr/sid.hpp"

#include <algorithm>
#include <cstdio>

#include "pmsr/error.hpp"

namespace pmsr {
namespace {

std::uint32_t index_mask(const SidNumbering& num) {
  return (1u << num.index_bits) - 1;
}

std::uint64_t device_part(const Node& node) { return node.loopback.value; }

std::uint32_t link_ordinal(const Topology& topology, LinkId id) {
  auto links = topology.out_links(topology.link(id).src);
  auto it = std::find(links.begin(), links.end(), id);
  return static_cast<std::uint32_t>(it - links.begin());
}

}  // namespace

NodeId target_node(const Topology& topology, const Sid& sid) {
  return sid.is_adjacency() ? topology.link(sid.link_ref()).dst : sid.node_ref();
}

std::string to_string(const Topology& topology, const Sid& sid) {
  switch (sid.kind()) {
    case SidKind::kNode:
      return "N:" + topology.node(sid.node_ref()).name;
    case SidKind::kDirectLink:
      return "D:" + topology.node(sid.node_ref()).name;
    case SidKind::kAdjLocal:
    case SidKind::kAdjGlobal: {
      const auto& l = topology.link(sid.link_ref());
      return std::string(sid.kind() == SidKind::kAdjLocal ? "A:" : "G:") +
             topology.node(l.src).name + "->" + topology.node(l.dst).name;
    }
  }
  return {};
}

Sid parse_sid(const Topology& topology, std::string_view text) {
  if (text.size() < 3 || text[1] != ':') {
    throw ParseError("SID '" + std::string(text) + "': expected N:, D:, A: or G: prefix");
  }
  const char tag = text[0];
  const auto body = text.substr(2);
  auto lookup = [&](std::string_view name) {
    auto id = topology.find_node(name);
    if (!id) throw ParseError("SID '" + std::string(text) + "': unknown node '" +
                              std::string(name) + "'");
    return *id;
  };
  switch (tag) {
    case 'N':
      return Sid::node(lookup(body));
    case 'D':
      return Sid::direct_link(lookup(body));
    case 'A':
    case 'G': {
      auto arrow = body.find("->");
      if (arrow == std::string_view::npos) {
        throw ParseError("SID '" + std::string(text) + "': expected src->dst");
      }
      auto link = topology.find_link(lookup(body.substr(0, arrow)),
                                     lookup(body.substr(arrow + 2)));
      if (!link) throw ParseError("SID '" + std::string(text) + "': no such link");
      return tag == 'A' ? Sid::adj_local(*link) : Sid::adj_global(*link);
    }
    default:
      throw ParseError("SID '" + std::string(text) + "': unknown kind '" +
                       std::string(1, tag) + "'");
  }
}

std::string Ipv6Address::to_string() const {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%x:%x:%x:%x:%x:%x:%x:%x",
                static_cast<unsigned>(hi >> 48), static_cast<unsigned>((hi >> 32) & 0xffff),
                static_cast<unsigned>((hi >> 16) & 0xffff), static_cast<unsigned>(hi & 0xffff),
                static_cast<unsigned>(lo >> 48), static_cast<unsigned>((lo >> 32) & 0xffff),
                static_cast<unsigned>((lo >> 16) & 0xffff), static_cast<unsigned>(lo & 0xffff));
  return buf;
}

void SidNumbering::check() const {
  if (plane == Plane::kMpls) {
    if (index_bits < 1 || index_bits > 18) {
      throw ConfigError("index_bits must be in [1, 18] for the MPLS plane");
    }
    if (mpls_base < 16) throw ConfigError("mpls_base overlaps reserved labels 0-15");
    const std::uint64_t top = std::uint64_t{mpls_base} + (std::uint64_t{1} << (index_bits + 1));
    if (top > std::uint64_t{kMaxMplsLabel} + 1) {
      throw ConfigError("label blocks overflow the 20-bit label space: " +
                        std::to_string(mpls_base) + " + " +
                        std::to_string(std::uint64_t{1} << (index_bits + 1)) + " > " +
                        std::to_string(kMaxMplsLabel));
    }
  }
}

MplsLabel node_sid_mpls(const SidNumbering& num, Ipv4Address loopback) {
  num.check();
  const MplsLabel label = num.mpls_base + (loopback.value & index_mask(num));
  if (label < num.mpls_base || label >= num.mpls_base + (1u << num.index_bits)) {
    throw ConfigError("node SID label outside its block");
  }
  return label;
}

MplsLabel dl_sid_mpls(const SidNumbering& num, Ipv4Address loopback) {
  const MplsLabel label = node_sid_mpls(num, loopback) + (1u << num.index_bits);
  if (label > kMaxMplsLabel) throw ConfigError("direct-link SID label past 2^20 - 1");
  return label;
}

Ipv6Address node_sid_ipv6(const SidNumbering& num, const Node& node) {
  const auto device = device_part(node);
  if (device % 2 == 0) {
    throw ConfigError("IPv6 node SIDs need an odd device part; '" + node.name +
                      "' has loopback " + node.loopback.to_string());
  }
  return Ipv6Address{num.ipv6_prefix, device};
}

Ipv6Address dl_sid_ipv6(const SidNumbering& num, const Node& node) {
  auto sid = node_sid_ipv6(num, node);
  sid.lo += 1;
  return sid;
}

std::string format_encoded(const EncodedSid& value) {
  if (const auto* label = std::get_if<MplsLabel>(&value)) return std::to_string(*label);
  return std::get<Ipv6Address>(value).to_string();
}

SidCodec::SidCodec(const Topology& topology, SidNumbering numbering)
    : topology_(&topology), num_(numbering) {
  num_.check();
  for (const auto& node : topology.nodes()) {
    by_loopback_.emplace(node.loopback.value, node.id);
    global_.emplace(encode(Sid::node(node.id)), Sid::node(node.id));
    global_.emplace(encode(Sid::direct_link(node.id)), Sid::direct_link(node.id));
  }
}

EncodedSid SidCodec::encode(const Sid& sid) const {
  const auto& topology = *topology_;
  switch (sid.kind()) {
    case SidKind::kNode: {
      const auto& node = topology.node(sid.node_ref());
      if (num_.plane == Plane::kMpls) return node_sid_mpls(num_, node.loopback);
      return node_sid_ipv6(num_, node);
    }
    case SidKind::kDirectLink: {
      const auto& node = topology.node(sid.node_ref());
      if (num_.plane == Plane::kMpls) return dl_sid_mpls(num_, node.loopback);
      return dl_sid_ipv6(num_, node);
    }
    case SidKind::kAdjLocal:
    case SidKind::kAdjGlobal: {
      const auto ordinal = link_ordinal(topology, sid.link_ref());
      const auto& owner = topology.node(topology.link(sid.link_ref()).src);
      if (num_.plane == Plane::kMpls) {
        if (sid.kind() == SidKind::kAdjGlobal) {
          throw ConfigError("global Adj-SIDs have no automatic MPLS label");
        }
        if (kLocalAdjLabelBase + ordinal >= num_.mpls_base) {
          throw ConfigError("local Adj-SID block collides with the node SID block");
        }
        return MplsLabel{kLocalAdjLabelBase + ordinal};
      }
      const std::uint64_t offset = sid.kind() == SidKind::kAdjLocal ? 1 : 2;
      return Ipv6Address{num_.ipv6_prefix + offset,
                         (device_part(owner) << 16) | ordinal};
    }
  }
  throw ConfigError("unknown SID kind");
}

std::optional<Sid> SidCodec::decode(const EncodedSid& value,
                                    std::optional<NodeId> at) const {
  if (auto it = global_.find(value); it != global_.end()) return it->second;
  const auto& topology = *topology_;
  auto link_at = [&](NodeId owner, std::uint64_t ordinal) -> std::optional<LinkId> {
    auto links = topology.out_links(owner);
    if (ordinal >= links.size()) return std::nullopt;
    return links[ordinal];
  };
  if (const auto* label = std::get_if<MplsLabel>(&value)) {
    if (!at || *label < kLocalAdjLabelBase) return std::nullopt;
    if (auto link = link_at(*at, *label - kLocalAdjLabelBase)) return Sid::adj_local(*link);
    return std::nullopt;
  }
  const auto& addr = std::get<Ipv6Address>(value);
  if (addr.hi != num_.ipv6_prefix + 1 && addr.hi != num_.ipv6_prefix + 2) {
    return std::nullopt;
  }
  auto owner = by_loopback_.find(static_cast<std::uint32_t>(addr.lo >> 16));
  if (owner == by_loopback_.end() || (addr.lo >> 48) != 0) return std::nullopt;
  auto link = link_at(owner->second, addr.lo & 0xffff);
  if (!link) return std::nullopt;
  return addr.hi == num_.ipv6_prefix + 1 ? Sid::adj_local(*link) : Sid::adj_global(*link);
}

}  // namespace pmsr
