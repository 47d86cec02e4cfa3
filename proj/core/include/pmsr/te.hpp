#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmsr/routing.hpp"
#include "pmsr/topology.hpp"

namespace pmsr {

using FlowId = std::uint64_t;

/// Unidirectional demand of `rate` b/s from src to dst.
struct Flow {
  FlowId id = 0;
  NodeId src = 0;
  NodeId dst = 0;
  double rate = 0.0;

  bool operator==(const Flow&) const = default;
};

struct AcceptedFlow {
  Flow flow;
  NodePath path;
};

/// Result of hop-by-hop flow assignment. `load[j]` is the sum of the
/// rates of accepted flows crossing link j, added in `accepted` order.
struct Assignment {
  std::vector<AcceptedFlow> accepted;  // admission order
  std::vector<FlowId> rejected;        // ascending id
  std::vector<double> load;
  int cycles = 0;
  /// Network cost after admission and after each deviation cycle.
  std::vector<double> cost_history;
};

struct AssignOptions {
  int max_cycles = 50;
  /// A deviation cycle that lowers the network cost by no more than this
  /// ends the optimization.
  double min_improvement = 1e-9;
};

/// Sequential admission in descending rate (ties by id) on the cheapest
/// path under w = 1 / (c - load - r), then flow-deviation cycles that move
/// single flows to a better path while the network cost
/// sum(load / (c - load)) keeps dropping. Loads stay strictly below
/// capacity on every link.
Assignment assign_flows(const Topology& topology, const std::vector<Flow>& flows,
                        const AssignOptions& options = {});

/// Loads recomputed from the accepted paths; equals Assignment::load
/// bit for bit.
std::vector<double> link_loads(const Topology& topology, const Assignment& assignment);

/// sum over links of load / (capacity - load).
double network_cost(const Topology& topology, const std::vector<double>& load);

struct DemandConfig {
  double pe_fraction = 0.40;
  double active_pair_fraction = 0.20;
  double mean_flows_per_direction = 3.5;
  double rate_sum_fraction_of_capacity = 0.10;
  std::uint64_t seed = 1;

  /// Throws ConfigError for fractions outside (0, 1] or a mean below 1.
  void check() const;
};

/// Random provider-edge demand: a PE subset, a subset of unordered PE
/// couples, and per couple and direction a geometric number of flows
/// (support 1, 2, ...) whose exponential rates are rescaled to sum to the
/// configured fraction of the reference link capacity (the smallest one).
/// Reproducible from the seed. Flow ids are 0, 1, 2, ...
std::vector<Flow> generate_demands(const Topology& topology, const DemandConfig& config);

/// Demand file: JSON lines {"id":int,"src":str,"dst":str,"rate":number}.
std::string emit_demands(const Topology& topology, const std::vector<Flow>& flows);
std::vector<Flow> parse_demands(const Topology& topology, std::string_view text);
std::vector<Flow> load_demands(const Topology& topology, const std::filesystem::path& path);

}  // namespace pmsr
