#include "report.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "pmsr/error.hpp"
#include "pmsr/hop_path.hpp"

namespace pmsr::cli {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Shortest decimal form that reads back to the same double.
std::string number(double value) { return nlohmann::json(value).dump(); }

std::string join_path(const Topology& topology, const NodePath& path) {
  std::string out;
  for (NodeId n : path) {
    if (!out.empty()) out += '-';
    out += topology.node(n).name;
  }
  return out;
}

}  // namespace

const char* mode_name(CompileMode mode) {
  return mode == CompileMode::kPmsr ? "pmsr" : "traditional";
}

const char* plane_name(Plane plane) { return plane == Plane::kIpv6 ? "ipv6" : "mpls"; }

RunOutcome execute_run(const Topology& topology, const RoutingView& rv,
                       const RunConfig& config, std::vector<Flow> flows) {
  RunOutcome out;
  out.flows = std::move(flows);

  auto start = Clock::now();
  out.assignment = assign_flows(topology, out.flows, config.assign);
  out.te_ms = ms_since(start);

  out.recomputed_load = link_loads(topology, out.assignment);
  out.feasible = true;
  for (LinkId j = 0; j < topology.link_count(); ++j) {
    const double c = topology.link(j).capacity;
    if (!(out.recomputed_load[j] < c)) out.feasible = false;
    out.max_utilization = std::max(out.max_utilization, out.recomputed_load[j] / c);
  }

  std::map<FlowId, const NodePath*> path_of;
  for (const auto& a : out.assignment.accepted) path_of[a.flow.id] = &a.path;

  const ForwardingState state(topology, rv, config.numbering);
  for (CompileMode mode : config.modes) {
    ModeOutcome m{mode, compile_all(topology, rv, out.assignment, mode), {}};
    for (const auto& f : m.compiled.flows) {
      const HopPath path(topology, *path_of.at(f.id));
      bool ok = false;
      try {
        ok = check_congruence(state, f.srp, path);
      } catch (const Error&) {
        ok = false;
      }
      if (!ok) m.incongruent.push_back(f.id);
    }
    out.modes.push_back(std::move(m));
  }
  return out;
}

bool all_congruent(const RunOutcome& outcome) {
  return std::all_of(outcome.modes.begin(), outcome.modes.end(),
                     [](const ModeOutcome& m) { return m.incongruent.empty(); });
}

std::string report_json(const Topology& topology, const RunConfig& config,
                        const RunOutcome& outcome) {
  using nlohmann::ordered_json;
  const auto& a = outcome.assignment;
  double offered = 0.0;
  double carried = 0.0;
  for (const auto& f : outcome.flows) offered += f.rate;
  for (const auto& f : a.accepted) carried += f.flow.rate;

  ordered_json report;
  report["topology"] = {{"nodes", topology.node_count()}, {"links", topology.link_count()}};

  ordered_json demand;
  if (config.demand_from_file) {
    demand["source"] = "file";
  } else {
    demand["source"] = "generated";
    demand["seed"] = config.demand.seed;
    demand["pe_fraction"] = config.demand.pe_fraction;
    demand["active_pair_fraction"] = config.demand.active_pair_fraction;
    demand["mean_flows_per_direction"] = config.demand.mean_flows_per_direction;
    demand["rate_sum_fraction_of_capacity"] = config.demand.rate_sum_fraction_of_capacity;
  }
  demand["generated"] = outcome.flows.size();
  demand["accepted"] = a.accepted.size();
  demand["rejected"] = a.rejected.size();
  demand["acceptance_ratio"] =
      outcome.flows.empty() ? 0.0
                            : static_cast<double>(a.accepted.size()) /
                                  static_cast<double>(outcome.flows.size());
  demand["offered_rate"] = offered;
  demand["accepted_rate"] = carried;
  report["demand"] = demand;

  report["assignment"] = {
      {"cycles", a.cycles},
      {"max_cycles", config.assign.max_cycles},
      {"network_cost", a.cost_history.empty() ? 0.0 : a.cost_history.back()},
      {"max_link_utilization", outcome.max_utilization},
      {"feasible", outcome.feasible},
  };

  ordered_json modes = ordered_json::object();
  for (const auto& m : outcome.modes) {
    ordered_json histogram = ordered_json::object();
    std::size_t total = 0;
    for (const auto& [len, count] : m.compiled.histogram) {
      histogram[std::to_string(len)] = count;
      total += len * count;
    }
    modes[mode_name(m.mode)] = {
        {"paths", m.compiled.flows.size()},
        {"total_segments", total},
        {"segment_histogram", histogram},
        {"congruent", m.compiled.flows.size() - m.incongruent.size()},
        {"incongruent", m.incongruent},
    };
  }
  report["sr"] = {{"plane", plane_name(config.numbering.plane)}, {"modes", modes}};
  return report.dump(2) + "\n";
}

std::string assignment_csv(const Topology& topology, const RunOutcome& outcome) {
  std::map<FlowId, const NodePath*> path_of;
  for (const auto& a : outcome.assignment.accepted) path_of[a.flow.id] = &a.path;

  std::string out =
      csv_row({"flow_id", "src", "dst", "rate", "accepted", "path", "path_cost"});
  auto flows = outcome.flows;
  std::sort(flows.begin(), flows.end(),
            [](const Flow& x, const Flow& y) { return x.id < y.id; });
  for (const auto& f : flows) {
    auto it = path_of.find(f.id);
    const bool accepted = it != path_of.end();
    out += csv_row({std::to_string(f.id), topology.node(f.src).name,
                    topology.node(f.dst).name, number(f.rate), accepted ? "1" : "0",
                    accepted ? join_path(topology, *it->second) : "",
                    accepted ? std::to_string(path_cost(topology, *it->second)) : ""});
  }
  return out;
}

std::string links_csv(const Topology& topology, const RunOutcome& outcome) {
  std::string out = csv_row({"link_id", "src", "dst", "cost", "capacity", "load", "utilization"});
  for (LinkId j = 0; j < topology.link_count(); ++j) {
    const auto& l = topology.link(j);
    const double load = outcome.recomputed_load[j];
    out += csv_row({std::to_string(j), topology.node(l.src).name, topology.node(l.dst).name,
                    std::to_string(l.cost), number(l.capacity), number(load),
                    number(load / l.capacity)});
  }
  return out;
}

std::string srpaths_csv(const Topology& topology, const SidCodec& codec,
                        const RunOutcome& outcome) {
  std::string out = csv_row({"flow_id", "mode", "segment_count", "segments", "sids"});
  for (const auto& m : outcome.modes) {
    for (const auto& f : m.compiled.flows) {
      std::string encoded;
      std::string symbolic;
      for (const auto& sid : f.srp.sids) {
        if (!encoded.empty()) {
          encoded += ',';
          symbolic += ',';
        }
        encoded += format_encoded(codec.encode(sid));
        symbolic += to_string(topology, sid);
      }
      out += csv_row({std::to_string(f.id), mode_name(m.mode), std::to_string(f.srp.size()),
                      encoded, symbolic});
    }
  }
  return out;
}

std::string timing_json(const RunOutcome& outcome) {
  nlohmann::ordered_json t;
  t["routing_ms"] = outcome.routing_ms;
  t["te_ms"] = outcome.te_ms;
  nlohmann::ordered_json sr = nlohmann::ordered_json::object();
  for (const auto& m : outcome.modes) sr[mode_name(m.mode)] = m.compiled.elapsed_ms;
  t["sr_ms"] = sr;
  return t.dump(2) + "\n";
}

}  // namespace pmsr::cli
