#include "pmsr/hop_path.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace pmsr {

HopPath::HopPath(const Topology& topology, std::vector<NodeId> nodes)
    : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw std::invalid_argument("hop-by-hop path is empty");
  std::unordered_set<NodeId> seen;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i] >= topology.node_count()) {
      throw std::invalid_argument("hop-by-hop path references unknown node");
    }
    if (!seen.insert(nodes_[i]).second) {
      throw std::invalid_argument("hop-by-hop path repeats node '" +
                                  topology.node(nodes_[i]).name + "'");
    }
    if (i > 0 && !topology.adjacent(nodes_[i - 1], nodes_[i])) {
      throw std::invalid_argument("hop-by-hop path uses missing link '" +
                                  topology.node(nodes_[i - 1]).name + "'->'" +
                                  topology.node(nodes_[i]).name + "'");
    }
  }
}

std::optional<std::size_t> HopPath::index_of(NodeId node) const {
  auto it = std::find(nodes_.begin(), nodes_.end(), node);
  if (it == nodes_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::span<const NodeId> HopPath::tep_at(std::size_t from, std::size_t to) const {
  if (from > to || to >= nodes_.size()) throw std::out_of_range("tep: bad range");
  return std::span<const NodeId>(nodes_).subspan(from, to - from + 1);
}

std::span<const NodeId> HopPath::tep(NodeId x, NodeId y) const {
  auto from = index_of(x);
  auto to = index_of(y);
  if (!from || !to) throw std::invalid_argument("tep: node not on path");
  return tep_at(*from, *to);
}

std::optional<NodeId> HopPath::prec(NodeId x) const {
  auto i = index_of(x);
  if (!i || *i == 0) return std::nullopt;
  return nodes_[*i - 1];
}

std::optional<NodeId> HopPath::succ(NodeId x) const {
  auto i = index_of(x);
  if (!i || *i + 1 == nodes_.size()) return std::nullopt;
  return nodes_[*i + 1];
}

std::vector<LinkId> HopPath::links(const Topology& topology) const {
  std::vector<LinkId> out;
  out.reserve(link_count());
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    out.push_back(*topology.find_link(nodes_[i - 1], nodes_[i]));
  }
  return out;
}

}  // namespace pmsr
