#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <numeric>
#include <random>
#include <sstream>

#include "pmsr/error.hpp"
#include "pmsr/te.hpp"

namespace pmsr {
namespace {

bool in_unit_interval(double x) { return x > 0.0 && x <= 1.0; }

// First `k` entries of `items` become a uniform random k-subset.
template <typename T>
void partial_shuffle(std::vector<T>& items, std::size_t k, std::mt19937_64& rng) {
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, items.size() - 1);
    std::swap(items[i], items[pick(rng)]);
  }
}

}  // namespace

void DemandConfig::check() const {
  if (!in_unit_interval(pe_fraction)) throw ConfigError("pe_fraction must be in (0, 1]");
  if (!in_unit_interval(active_pair_fraction)) {
    throw ConfigError("active_pair_fraction must be in (0, 1]");
  }
  if (!in_unit_interval(rate_sum_fraction_of_capacity)) {
    throw ConfigError("rate_sum_fraction_of_capacity must be in (0, 1]");
  }
  if (!(mean_flows_per_direction >= 1.0)) {
    throw ConfigError("mean_flows_per_direction must be at least 1");
  }
}

std::vector<Flow> generate_demands(const Topology& topology, const DemandConfig& config) {
  config.check();
  const auto n = topology.node_count();
  if (n < 3 || topology.link_count() == 0) {
    throw ConfigError("too few nodes for demand generation (need at least 3)");
  }
  std::mt19937_64 rng(config.seed);

  const auto pe_count = static_cast<std::size_t>(std::lround(config.pe_fraction * n));
  if (pe_count < 2) throw ConfigError("too few nodes for one PE couple");
  std::vector<NodeId> pes(n);
  std::iota(pes.begin(), pes.end(), NodeId{0});
  partial_shuffle(pes, pe_count, rng);
  pes.resize(pe_count);
  std::sort(pes.begin(), pes.end());

  std::vector<std::pair<NodeId, NodeId>> couples;
  for (std::size_t i = 0; i < pes.size(); ++i) {
    for (std::size_t j = i + 1; j < pes.size(); ++j) couples.emplace_back(pes[i], pes[j]);
  }
  const auto active = static_cast<std::size_t>(
      std::lround(config.active_pair_fraction * static_cast<double>(couples.size())));
  if (active == 0) throw ConfigError("too few nodes for one active PE couple");
  partial_shuffle(couples, active, rng);
  couples.resize(active);
  std::sort(couples.begin(), couples.end());

  double capacity = topology.link(0).capacity;
  for (const auto& l : topology.links()) capacity = std::min(capacity, l.capacity);
  const double rate_sum = config.rate_sum_fraction_of_capacity * capacity;

  std::geometric_distribution<int> extra_flows(1.0 / config.mean_flows_per_direction);
  std::exponential_distribution<double> size(1.0);
  std::vector<Flow> flows;
  for (const auto& [a, b] : couples) {
    for (const auto& [src, dst] : {std::pair{a, b}, std::pair{b, a}}) {
      const int count = 1 + extra_flows(rng);
      std::vector<double> raw(static_cast<std::size_t>(count));
      for (auto& r : raw) r = size(rng);
      const double total = std::accumulate(raw.begin(), raw.end(), 0.0);
      for (double r : raw) {
        flows.push_back(Flow{flows.size(), src, dst, r * (rate_sum / total)});
      }
    }
  }
  return flows;
}

std::string emit_demands(const Topology& topology, const std::vector<Flow>& flows) {
  std::string out;
  for (const auto& f : flows) {
    nlohmann::ordered_json line;
    line["id"] = f.id;
    line["src"] = topology.node(f.src).name;
    line["dst"] = topology.node(f.dst).name;
    line["rate"] = f.rate;
    out += line.dump();
    out += '\n';
  }
  return out;
}

std::vector<Flow> parse_demands(const Topology& topology, std::string_view text) {
  std::vector<Flow> flows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto where = "demand line " + std::to_string(line_no);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("id") || !j.contains("src") || !j.contains("dst") ||
        !j.contains("rate")) {
      throw ParseError(where + ": expected id, src, dst and rate");
    }
    if (!j["id"].is_number_unsigned() || !j["src"].is_string() || !j["dst"].is_string() ||
        !j["rate"].is_number()) {
      throw ParseError(where + ": wrong field types");
    }
    auto node = [&](const char* key) {
      auto id = topology.find_node(j[key].get<std::string>());
      if (!id) throw ParseError(where + ": unknown node '" + j[key].get<std::string>() + "'");
      return *id;
    };
    Flow f{j["id"].get<FlowId>(), node("src"), node("dst"), j["rate"].get<double>()};
    if (f.src == f.dst) throw ParseError(where + ": source equals destination");
    if (!(f.rate > 0.0)) throw ParseError(where + ": rate must be positive");
    flows.push_back(f);
  }
  return flows;
}

std::vector<Flow> load_demands(const Topology& topology, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_demands(topology, buffer.str());
}

}  // namespace pmsr
