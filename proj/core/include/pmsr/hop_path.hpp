#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pmsr/topology.hpp"

namespace pmsr {

/// A fully deterministic node-by-node route n0 = s, ..., nN = d. Always
/// simple, and consecutive nodes are adjacent in the topology it was
/// checked against.
class HopPath {
 public:
  /// Throws std::invalid_argument if the sequence is empty, repeats a node
  /// or steps over a missing link.
  HopPath(const Topology& topology, std::vector<NodeId> nodes);

  std::span<const NodeId> nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t link_count() const noexcept { return nodes_.size() - 1; }
  NodeId source() const noexcept { return nodes_.front(); }
  NodeId destination() const noexcept { return nodes_.back(); }
  NodeId operator[](std::size_t i) const { return nodes_.at(i); }

  std::optional<std::size_t> index_of(NodeId node) const;

  /// Sub-path between positions `from` and `to` inclusive.
  std::span<const NodeId> tep_at(std::size_t from, std::size_t to) const;
  /// Sub-path between two nodes of the path; throws if either is absent or
  /// they are out of order.
  std::span<const NodeId> tep(NodeId x, NodeId y) const;

  /// Neighbours along the path; nullopt at the ends.
  std::optional<NodeId> prec(NodeId x) const;
  std::optional<NodeId> succ(NodeId x) const;

  /// Link ids along the path, in order.
  std::vector<LinkId> links(const Topology& topology) const;

  bool operator==(const HopPath&) const = default;

 private:
  std::vector<NodeId> nodes_;
};

}  // namespace pmsr
