#pragma once

#include <string>
#include <vector>

#include "pmsr/fwdsim.hpp"
#include "pmsr/srcompile.hpp"
#include "pmsr/te.hpp"

namespace pmsr::cli {

struct RunConfig {
  DemandConfig demand;        // seed and generator parameters
  bool demand_from_file = false;
  std::vector<CompileMode> modes{CompileMode::kPmsr};
  AssignOptions assign;
  SidNumbering numbering;
};

struct ModeOutcome {
  CompileMode mode = CompileMode::kPmsr;
  CompileResult compiled;
  std::vector<FlowId> incongruent;  // flows whose SR path failed re-simulation
};

struct RunOutcome {
  std::vector<Flow> flows;
  Assignment assignment;
  std::vector<ModeOutcome> modes;
  /// Loads recomputed from the accepted paths.
  std::vector<double> recomputed_load;
  bool feasible = false;
  double max_utilization = 0.0;
  double te_ms = 0.0;
  double routing_ms = 0.0;
};

/// Assign, compile in every requested mode and re-verify each SR path with
/// the forwarding simulator.
RunOutcome execute_run(const Topology& topology, const RoutingView& rv,
                       const RunConfig& config, std::vector<Flow> flows);

bool all_congruent(const RunOutcome& outcome);

const char* mode_name(CompileMode mode);
const char* plane_name(Plane plane);

/// Deterministic artifacts: no timings, no host data.
std::string report_json(const Topology& topology, const RunConfig& config,
                        const RunOutcome& outcome);
std::string assignment_csv(const Topology& topology, const RunOutcome& outcome);
std::string links_csv(const Topology& topology, const RunOutcome& outcome);
std::string srpaths_csv(const Topology& topology, const SidCodec& codec,
                        const RunOutcome& outcome);
/// Wall-clock figures of the run, kept apart from report.json.
std::string timing_json(const RunOutcome& outcome);

}  // namespace pmsr::cli
