#include "pmsr/topology.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <stdexcept>

#include "pmsr/error.hpp"

namespace pmsr {
namespace {

std::uint64_t pair_key(NodeId src, NodeId dst) {
  return (static_cast<std::uint64_t>(src) << 32) | dst;
}

}  // namespace

Ipv4Address Ipv4Address::parse(std::string_view dotted) {
  std::uint32_t value = 0;
  const char* p = dotted.data();
  const char* end = dotted.data() + dotted.size();
  for (int octet = 0; octet < 4; ++octet) {
    unsigned part = 0;
    auto [next, ec] = std::from_chars(p, end, part);
    if (ec != std::errc{} || next == p || part > 255) {
      throw ParseError("invalid IPv4 address '" + std::string(dotted) + "'");
    }
    value = (value << 8) | part;
    p = next;
    if (octet < 3) {
      if (p == end || *p != '.') {
        throw ParseError("invalid IPv4 address '" + std::string(dotted) + "'");
      }
      ++p;
    }
  }
  if (p != end) {
    throw ParseError("invalid IPv4 address '" + std::string(dotted) + "'");
  }
  return Ipv4Address{value};
}

std::string Ipv4Address::to_string() const {
  return std::to_string(value >> 24) + '.' + std::to_string((value >> 16) & 0xff) +
         '.' + std::to_string((value >> 8) & 0xff) + '.' +
         std::to_string(value & 0xff);
}

Ipv4Address auto_loopback(NodeId index) {
  return Ipv4Address{kLoopbackBase.value + 2u * index};
}

Topology::Topology(std::vector<Node> nodes, std::vector<Link> links)
    : nodes_(std::move(nodes)), links_(std::move(links)) {
  const auto n = nodes_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (nodes_[i].id != i) {
      throw std::invalid_argument("node ids must be dense and ordered");
    }
    name_lookup_.emplace(nodes_[i].name, static_cast<NodeId>(i));
  }

  std::vector<std::size_t> degree(n, 0);
  for (LinkId id = 0; id < links_.size(); ++id) {
    const auto& l = links_[id];
    if (l.src >= n || l.dst >= n) {
      throw std::invalid_argument("link endpoint out of range");
    }
    ++degree[l.src];
    link_lookup_.emplace(pair_key(l.src, l.dst), id);
  }

  out_offsets_.assign(n + 1, 0);
  std::partial_sum(degree.begin(), degree.end(), out_offsets_.begin() + 1);
  out_index_.resize(links_.size());
  std::vector<std::size_t> fill(out_offsets_.begin(), out_offsets_.end() - 1);
  for (LinkId id = 0; id < links_.size(); ++id) {
    out_index_[fill[links_[id].src]++] = id;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::stable_sort(out_index_.begin() + static_cast<std::ptrdiff_t>(out_offsets_[v]),
                     out_index_.begin() + static_cast<std::ptrdiff_t>(out_offsets_[v + 1]),
                     [this](LinkId a, LinkId b) { return links_[a].dst < links_[b].dst; });
  }
}

std::span<const LinkId> Topology::out_links(NodeId id) const {
  if (id >= nodes_.size()) throw std::out_of_range("node id out of range");
  return std::span<const LinkId>(out_index_).subspan(
      out_offsets_[id], out_offsets_[id + 1] - out_offsets_[id]);
}

std::optional<LinkId> Topology::find_link(NodeId src, NodeId dst) const {
  auto it = link_lookup_.find(pair_key(src, dst));
  if (it == link_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<NodeId> Topology::find_node(std::string_view name) const {
  auto it = name_lookup_.find(std::string(name));
  if (it == name_lookup_.end()) return std::nullopt;
  return it->second;
}

Topology Topology::with_link_cost(LinkId id, Cost cost) const {
  auto links = links_;
  links.at(id).cost = cost;
  return Topology(nodes_, std::move(links));
}

std::vector<std::string> validate(const Topology& topology, unsigned index_bits) {
  std::vector<std::string> out;
  const auto n = topology.node_count();
  if (n < 2) {
    out.push_back("disconnected or trivial: topology has " + std::to_string(n) +
                  " node(s)");
  }

  std::map<std::string, NodeId> names;
  std::map<std::uint32_t, NodeId> loopbacks;
  std::map<std::uint32_t, NodeId> indices;
  const std::uint64_t index_mask =
      index_bits >= 32 ? 0xffffffffull : ((1ull << index_bits) - 1);
  for (const auto& node : topology.nodes()) {
    if (!names.emplace(node.name, node.id).second) {
      out.push_back("duplicate node name '" + node.name + "'");
    }
    if (auto [it, fresh] = loopbacks.emplace(node.loopback.value, node.id); !fresh) {
      out.push_back("duplicate loopback " + node.loopback.to_string() + " on '" +
                    topology.node(it->second).name + "' and '" + node.name + "'");
      continue;
    }
    const auto index = static_cast<std::uint32_t>(node.loopback.value & index_mask);
    if (auto [it, fresh] = indices.emplace(index, node.id); !fresh) {
      out.push_back("loopback index collision: '" + topology.node(it->second).name +
                    "' and '" + node.name + "' share index " + std::to_string(index));
    }
  }

  std::map<std::pair<NodeId, NodeId>, LinkId> seen;
  for (LinkId id = 0; id < topology.link_count(); ++id) {
    const auto& l = topology.link(id);
    const auto label = "'" + topology.node(l.src).name + "'->'" +
                       topology.node(l.dst).name + "'";
    if (l.src == l.dst) out.push_back("self-loop on " + label);
    if (!seen.emplace(std::pair{l.src, l.dst}, id).second) {
      out.push_back("duplicate link " + label);
    }
    if (l.cost < 1) out.push_back("nonpositive cost on " + label);
    if (!(l.capacity > 0.0)) out.push_back("nonpositive capacity on " + label);
  }

  if (n >= 2) {
    // Weak connectivity: BFS over the underlying undirected graph.
    std::vector<std::vector<NodeId>> undirected(n);
    for (const auto& l : topology.links()) {
      undirected[l.src].push_back(l.dst);
      undirected[l.dst].push_back(l.src);
    }
    std::vector<bool> seen_node(n, false);
    std::vector<NodeId> stack{0};
    seen_node[0] = true;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : undirected[v]) {
        if (!seen_node[w]) {
          seen_node[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::size_t missing = 0;
    std::string first;
    for (NodeId v = 0; v < n; ++v) {
      if (!seen_node[v]) {
        if (missing++ == 0) first = topology.node(v).name;
      }
    }
    if (missing > 0) {
      out.push_back("disconnected: " + std::to_string(missing) +
                    " node(s) unreachable from '" + topology.node(0).name +
                    "', first is '" + first + "'");
    }
  }
  return out;
}

}  // namespace pmsr
