#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <optional>

#include "csv.hpp"
#include "pmsr/error.hpp"
#include "pmsr/fwdsim.hpp"
#include "pmsr/srcompile.hpp"
#include "pmsr/te.hpp"
#include "report.hpp"

namespace pmsr::cli {
namespace {

using Clock = std::chrono::steady_clock;

const std::map<std::string, Plane> kPlanes{{"mpls", Plane::kMpls}, {"ipv6", Plane::kIpv6}};
const std::map<std::string, CompileMode> kModes{{"traditional", CompileMode::kTraditional},
                                                {"pmsr", CompileMode::kPmsr}};

bool is_graphml(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".graphml" || ext == ".xml";
}

Topology read_topology(const std::filesystem::path& path, std::ostream& err) {
  if (!is_graphml(path)) return load_json(path);
  auto imported = load_graphml(path, 1, 1e9);
  for (const auto& w : imported.warnings) err << "warning: " << w << '\n';
  return std::move(imported.topology);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  for (char c : text) {
    if (c == sep) {
      out.push_back(item);
      item.clear();
    } else {
      item += c;
    }
  }
  out.push_back(item);
  return out;
}

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct NumberingFlags {
  std::string plane = "mpls";
  unsigned index_bits = 16;
  MplsLabel mpls_base = 100000;

  SidNumbering numbering() const {
    SidNumbering num;
    num.plane = kPlanes.at(plane);
    num.index_bits = index_bits;
    num.mpls_base = mpls_base;
    num.check();
    return num;
  }
};

void add_numbering(CLI::App* sub, NumberingFlags& flags) {
  sub->add_option("--plane", flags.plane, "SID plane")
      ->check(CLI::IsMember({"mpls", "ipv6"}))
      ->capture_default_str();
  sub->add_option("--index-bits", flags.index_bits, "loopback bits used for MPLS labels")
      ->capture_default_str();
  sub->add_option("--mpls-base", flags.mpls_base, "first label of the Node-SID block")
      ->capture_default_str();
}

std::string sid_list(const Topology& topology, const SrPath& srp) {
  std::string out;
  for (const auto& sid : srp.sids) {
    if (!out.empty()) out += ',';
    out += to_string(topology, sid);
  }
  return out;
}

// ---- topo -----------------------------------------------------------------

int cmd_topo_validate(const std::string& file, std::ostream& out, std::ostream& err) {
  const auto topology = read_topology(file, err);
  out << "ok: " << topology.node_count() << " nodes, " << topology.link_count()
      << " links\n";
  return kExitOk;
}

int cmd_topo_convert(const std::string& file, Cost cost, double capacity,
                     const std::string& output, std::ostream& out, std::ostream& err) {
  auto imported = load_graphml(file, cost, capacity);
  for (const auto& w : imported.warnings) err << "warning: " << w << '\n';
  write_atomic(output, emit_json(imported.topology));
  out << "converted: " << imported.topology.node_count() << " nodes, "
      << imported.topology.link_count() << " links -> " << output << '\n';
  return kExitOk;
}

// ---- run ------------------------------------------------------------------

struct RunFlags {
  std::string topology;
  std::string demands;
  DemandConfig demand;
  std::string mode = "pmsr";
  int max_cycles = 50;
  std::string out_dir = "out";
  NumberingFlags numbering;
};

int cmd_run(const RunFlags& flags, std::ostream& out, std::ostream& err) {
  const auto topology = read_topology(flags.topology, err);
  RunConfig config;
  config.demand = flags.demand;
  config.demand.check();
  config.assign.max_cycles = flags.max_cycles;
  config.numbering = flags.numbering.numbering();
  if (flags.mode == "both") {
    config.modes = {CompileMode::kTraditional, CompileMode::kPmsr};
  } else {
    config.modes = {kModes.at(flags.mode)};
  }

  std::vector<Flow> flows;
  if (!flags.demands.empty()) {
    config.demand_from_file = true;
    flows = load_demands(topology, flags.demands);
  } else {
    flows = generate_demands(topology, config.demand);
  }

  auto start = Clock::now();
  const auto rv = build_routing(topology);
  const double routing_ms = ms_since(start);
  // Validates the numbering against every loopback before any work.
  const ForwardingState state(topology, rv, config.numbering);

  auto outcome = execute_run(topology, rv, config, std::move(flows));
  outcome.routing_ms = routing_ms;

  const std::filesystem::path dir(flags.out_dir);
  write_atomic(dir / "demands.jsonl", emit_demands(topology, outcome.flows));
  write_atomic(dir / "assignment.csv", assignment_csv(topology, outcome));
  write_atomic(dir / "links.csv", links_csv(topology, outcome));
  write_atomic(dir / "srpaths.csv", srpaths_csv(topology, state.codec(), outcome));
  write_atomic(dir / "timing.json", timing_json(outcome));
  write_atomic(dir / "report.json", report_json(topology, config, outcome));

  const auto& a = outcome.assignment;
  out << "topology: " << topology.node_count() << " nodes, " << topology.link_count()
      << " links\n";
  out << "flows: " << outcome.flows.size() << " generated, " << a.accepted.size()
      << " accepted, " << a.rejected.size() << " rejected\n";
  out << "assignment: " << a.cycles << " deviation cycles, max utilization "
      << outcome.max_utilization << ", " << outcome.te_ms << " ms\n";
  for (const auto& m : outcome.modes) {
    std::size_t total = 0;
    for (const auto& [len, count] : m.compiled.histogram) total += len * count;
    out << mode_name(m.mode) << ": " << total << " segments over "
        << m.compiled.flows.size() << " paths, " << m.compiled.elapsed_ms << " ms, "
        << m.incongruent.size() << " incongruent\n";
  }
  out << "written to " << dir.string() << '\n';

  bool failed = false;
  if (!outcome.feasible) {
    err << "verification failed: a link load reaches its capacity\n";
    failed = true;
  }
  for (const auto& m : outcome.modes) {
    for (FlowId id : m.incongruent) {
      err << "verification failed: " << mode_name(m.mode) << " SR path of flow " << id
          << " is not congruent\n";
      failed = true;
    }
  }
  return failed ? kExitVerification : kExitOk;
}

// ---- bench ----------------------------------------------------------------

struct BenchFlags {
  std::string topology;
  std::size_t flows_step = 100;
  int repeats = 1;
  std::uint64_t seed = 1;
  std::size_t max_admitted = 900;
  std::string mode = "pmsr";
  int max_cycles = 50;
};

int cmd_bench(const BenchFlags& flags, std::ostream& out, std::ostream& err) {
  if (flags.flows_step == 0 || flags.repeats < 1) {
    throw ConfigError("--flows-step and --repeats must be positive");
  }
  const auto topology = read_topology(flags.topology, err);
  DemandConfig demand;
  demand.seed = flags.seed;
  const auto all = generate_demands(topology, demand);
  const auto rv = build_routing(topology);
  const auto mode = kModes.at(flags.mode);
  AssignOptions options;
  options.max_cycles = flags.max_cycles;

  out << csv_row({"flows", "repeat", "admitted", "te_ms", "sr_ms", "cycles"});
  for (std::size_t n = std::min(flags.flows_step, all.size());;
       n = std::min(n + flags.flows_step, all.size())) {
    const std::vector<Flow> flows(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n));
    std::size_t admitted = 0;
    for (int r = 0; r < flags.repeats; ++r) {
      const auto start = Clock::now();
      const auto assignment = assign_flows(topology, flows, options);
      const double te_ms = ms_since(start);
      const auto compiled = compile_all(topology, rv, assignment, mode);
      admitted = assignment.accepted.size();
      out << csv_row({std::to_string(n), std::to_string(r), std::to_string(admitted),
                      std::to_string(te_ms), std::to_string(compiled.elapsed_ms),
                      std::to_string(assignment.cycles)});
      out.flush();
    }
    if (n == all.size() || admitted >= flags.max_admitted) break;
  }
  return kExitOk;
}

// ---- verify ---------------------------------------------------------------

struct VerifyFlags {
  std::string topology;
  std::string path;
  std::string sids;
  std::string mode = "pmsr";
  bool trace = false;
  NumberingFlags numbering;
};

int cmd_verify(const VerifyFlags& flags, std::ostream& out, std::ostream& err) {
  const auto topology = read_topology(flags.topology, err);
  std::vector<NodeId> nodes;
  for (const auto& name : split(flags.path, ',')) {
    auto id = topology.find_node(name);
    if (!id) throw ParseError("unknown node '" + name + "' in --path");
    nodes.push_back(*id);
  }
  const HopPath path(topology, nodes);
  const auto rv = build_routing(topology);
  const ForwardingState state(topology, rv, flags.numbering.numbering());

  SrPath srp{path.source(), {}};
  if (!flags.sids.empty()) {
    for (const auto& token : split(flags.sids, ',')) {
      srp.sids.push_back(parse_sid(topology, token));
    }
  } else {
    srp = t_srp(topology, rv, path);
    if (kModes.at(flags.mode) == CompileMode::kPmsr) srp = dl_srp(topology, rv, path, srp);
  }

  std::string encoded;
  for (const auto& sid : srp.sids) {
    if (!encoded.empty()) encoded += ',';
    encoded += format_encoded(state.codec().encode(sid));
  }
  out << "sr path: " << sid_list(topology, srp) << '\n';
  out << "encoded: " << encoded << '\n';

  std::vector<TraceHop> trace;
  SimulateOptions options;
  if (flags.trace) options.trace = &trace;
  RealizedRoutes realized;
  try {
    realized = simulate(state, srp, options);
  } catch (const SimulationError& e) {
    for (const auto& hop : trace) out << format_trace(topology, hop) << '\n';
    out << "congruent: no\n";
    err << "forwarding failed: " << e.what() << '\n';
    return kExitVerification;
  }
  for (const auto& hop : trace) out << format_trace(topology, hop) << '\n';
  for (const auto& route : realized.routes) {
    std::string line;
    for (NodeId n : route_nodes(topology, srp.source, route)) {
      if (!line.empty()) line += ' ';
      line += topology.node(n).name;
    }
    out << "route: " << line << '\n';
  }
  const bool congruent =
      realized.deterministic() && *realized.routes.begin() == path.links(topology);
  out << "congruent: " << (congruent ? "yes" : "no") << '\n';
  return congruent ? kExitOk : kExitVerification;
}

// ---- tables ---------------------------------------------------------------

struct TablesFlags {
  std::string topology;
  std::string node;
  NumberingFlags numbering;
};

int cmd_tables(const TablesFlags& flags, std::ostream& out, std::ostream& err) {
  const auto topology = read_topology(flags.topology, err);
  const auto rv = build_routing(topology);
  const ForwardingState state(topology, rv, flags.numbering.numbering());
  std::optional<NodeId> only;
  if (!flags.node.empty()) {
    only = topology.find_node(flags.node);
    if (!only) throw ParseError("unknown node '" + flags.node + "'");
  }
  for (const auto& table : state.tables()) {
    if (only && table.owner() != *only) continue;
    out << "# " << topology.node(table.owner()).name << " (" << table.size()
        << " entries)\n";
    out << dump_table(topology, rv, state.codec(), table);
  }
  return kExitOk;
}

}  // namespace

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw Error("cannot write '" + tmp.string() + "'");
    file << content;
    file.flush();
    if (!file) throw Error("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Segment routing path compiler and traffic engineering experiments", "pmsr"};
  app.require_subcommand(1);

  auto* topo = app.add_subcommand("topo", "Topology utilities");
  topo->require_subcommand(1);
  std::string topo_file;
  auto* validate = topo->add_subcommand("validate", "Check a topology file");
  validate->add_option("file", topo_file, "JSON or GraphML topology")->required();
  auto* convert = topo->add_subcommand("convert", "Convert GraphML to JSON");
  Cost convert_cost = 1;
  double convert_capacity = 1e9;
  std::string convert_out;
  convert->add_option("graphml", topo_file, "GraphML topology")->required();
  convert->add_option("--cost", convert_cost, "IGP cost of every link")->capture_default_str();
  convert->add_option("--capacity", convert_capacity, "capacity of every link")
      ->capture_default_str();
  convert->add_option("-o,--output", convert_out, "JSON output file")->required();

  RunFlags run;
  auto* run_cmd = app.add_subcommand("run", "Generate demand, assign, compile and verify");
  run_cmd->add_option("topology", run.topology, "topology file")->required();
  run_cmd->add_option("--demands", run.demands, "JSON-lines demand file instead of --seed");
  run_cmd->add_option("--seed", run.demand.seed, "demand generator seed")->capture_default_str();
  run_cmd->add_option("--pe-frac", run.demand.pe_fraction, "fraction of nodes that are PEs")
      ->capture_default_str();
  run_cmd->add_option("--pair-frac", run.demand.active_pair_fraction,
                      "fraction of PE couples with traffic")
      ->capture_default_str();
  run_cmd->add_option("--mean-flows", run.demand.mean_flows_per_direction,
                      "mean flows per couple and direction")
      ->capture_default_str();
  run_cmd->add_option("--rate-frac", run.demand.rate_sum_fraction_of_capacity,
                      "per-direction rate sum over the smallest link capacity")
      ->capture_default_str();
  run_cmd->add_option("--mode", run.mode, "SR path flavour")
      ->check(CLI::IsMember({"traditional", "pmsr", "both"}))
      ->capture_default_str();
  run_cmd->add_option("--max-cycles", run.max_cycles, "deviation cycle limit")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  run_cmd->add_option("--out-dir", run.out_dir, "output directory")->capture_default_str();
  add_numbering(run_cmd, run.numbering);

  BenchFlags bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time assignment and SR compilation");
  bench_cmd->add_option("topology", bench.topology, "topology file")->required();
  bench_cmd->add_option("--flows-step", bench.flows_step, "offered flows added per point")
      ->capture_default_str();
  bench_cmd->add_option("--repeats", bench.repeats, "runs per point")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "demand generator seed")->capture_default_str();
  bench_cmd->add_option("--max-admitted", bench.max_admitted,
                        "stop once this many flows are admitted")
      ->capture_default_str();
  bench_cmd->add_option("--mode", bench.mode, "SR path flavour")
      ->check(CLI::IsMember({"traditional", "pmsr"}))
      ->capture_default_str();
  bench_cmd->add_option("--max-cycles", bench.max_cycles, "deviation cycle limit")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  VerifyFlags verify;
  auto* verify_cmd = app.add_subcommand("verify", "Compile or check one SR path");
  verify_cmd->add_option("topology", verify.topology, "topology file")->required();
  verify_cmd->add_option("--path", verify.path, "hop-by-hop path, comma-separated names")
      ->required();
  verify_cmd->add_option("--sids", verify.sids,
                         "SR path to check instead of compiling, e.g. N:n3,A:n3->n5");
  verify_cmd->add_option("--mode", verify.mode, "SR path flavour when compiling")
      ->check(CLI::IsMember({"traditional", "pmsr"}))
      ->capture_default_str();
  verify_cmd->add_flag("--trace", verify.trace, "print every forwarding step");
  add_numbering(verify_cmd, verify.numbering);

  TablesFlags tables;
  auto* tables_cmd = app.add_subcommand("tables", "Dump SID forwarding tables");
  tables_cmd->add_option("topology", tables.topology, "topology file")->required();
  tables_cmd->add_option("--node", tables.node, "only this node");
  add_numbering(tables_cmd, tables.numbering);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_topo_validate(topo_file, out, err);
    if (convert->parsed()) {
      return cmd_topo_convert(topo_file, convert_cost, convert_capacity, convert_out, out, err);
    }
    if (run_cmd->parsed()) return cmd_run(run, out, err);
    if (bench_cmd->parsed()) return cmd_bench(bench, out, err);
    if (verify_cmd->parsed()) return cmd_verify(verify, out, err);
    if (tables_cmd->parsed()) return cmd_tables(tables, out, err);
  } catch (const ValidationError& e) {
    for (const auto& d : e.diagnostics()) err << "error: " << d << '\n';
    if (e.diagnostics().empty()) err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitVerification;
  }
  return kExitUsage;
}

}  // namespace pmsr::cli
