#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "pmsr/error.hpp"
#include "pmsr/te.hpp"
#include "support.hpp"

namespace pmsr {
namespace {

using testing::node_id;

Topology from_json(const char* text) { return parse_json(text); }

Topology diamond() {
  return from_json(R"({"nodes":[{"name":"a"},{"name":"b"},{"name":"c"},{"name":"d"}],
    "edges":[{"a":"a","b":"b","cost":1,"capacity":1},{"a":"b","b":"d","cost":1,"capacity":1},
             {"a":"a","b":"c","cost":1,"capacity":1},{"a":"c","b":"d","cost":1,"capacity":1}]})");
}

TEST(AssignFlows, DiamondSplitsTwoFlows) {
  const auto t = diamond();
  const auto a = node_id(t, "a");
  const auto d = node_id(t, "d");
  const auto result = assign_flows(t, {Flow{0, a, d, 0.6}, Flow{1, a, d, 0.6}});
  ASSERT_EQ(result.accepted.size(), 2u);
  EXPECT_TRUE(result.rejected.empty());
  EXPECT_NE(result.accepted[0].path, result.accepted[1].path);
  for (double load : result.load) EXPECT_TRUE(load == 0.0 || load == 0.6);
}

TEST(AssignFlows, DiamondSpreadsSmallFlows) {
  // Both fit on one route, but the network cost is lower when split.
  const auto t = diamond();
  const auto a = node_id(t, "a");
  const auto d = node_id(t, "d");
  const auto result = assign_flows(t, {Flow{0, a, d, 0.3}, Flow{1, a, d, 0.3}});
  ASSERT_EQ(result.accepted.size(), 2u);
  EXPECT_NE(result.accepted[0].path, result.accepted[1].path);
}

TEST(AssignFlows, StrictCapacity) {
  const auto t = from_json(R"({"nodes":[{"name":"a"},{"name":"b"}],
    "edges":[{"a":"a","b":"b","cost":1,"capacity":1}]})");
  auto result = assign_flows(t, {Flow{0, 0, 1, 0.5}, Flow{1, 0, 1, 0.6}});
  ASSERT_EQ(result.accepted.size(), 1u);
  EXPECT_EQ(result.accepted[0].flow.id, 0u + 1u);  // larger rate admitted first
  EXPECT_EQ(result.rejected, std::vector<FlowId>{0});

  result = assign_flows(t, {Flow{0, 0, 1, 0.5}, Flow{1, 0, 1, 0.5}});
  EXPECT_EQ(result.accepted.size(), 1u);
  EXPECT_EQ(result.rejected, std::vector<FlowId>{1});  // tie goes to the lower id

  result = assign_flows(t, {Flow{0, 0, 1, 1.0}});
  EXPECT_EQ(result.rejected, std::vector<FlowId>{0});
}

TEST(AssignFlows, InvalidFlow) {
  const auto t = diamond();
  EXPECT_THROW(assign_flows(t, {Flow{0, 1, 1, 0.1}}), std::invalid_argument);
  EXPECT_THROW(assign_flows(t, {Flow{0, 0, 1, 0.0}}), std::invalid_argument);
  EXPECT_THROW(assign_flows(t, {Flow{0, 0, 9, 0.1}}), std::invalid_argument);
}

TEST(LinkLoads, EmptyAndSinglePath) {
  const auto t = testing::load_f7();
  EXPECT_EQ(link_loads(t, Assignment{}), std::vector<double>(t.link_count(), 0.0));

  const auto p = testing::node_path(t, {"n4", "n5", "n6", "n7"});
  Assignment a;
  a.accepted.push_back(AcceptedFlow{Flow{0, p.front(), p.back(), 0.25}, p});
  const auto load = link_loads(t, a);
  std::set<LinkId> on_path;
  for (std::size_t i = 1; i < p.size(); ++i) on_path.insert(*t.find_link(p[i - 1], p[i]));
  for (LinkId j = 0; j < t.link_count(); ++j) {
    EXPECT_EQ(load[j], on_path.count(j) ? 0.25 : 0.0);
  }
}

TEST(AssignFlows, RandomInstancesStayFeasible) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 60; ++i) {
    testing::RandomGraphSpec spec;
    spec.nodes = 4 + i % 9;
    spec.capacity = 1.0;
    const auto t = testing::random_topology(rng, spec);
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(t.node_count() - 1));
    std::exponential_distribution<double> rate(4.0);
    std::vector<Flow> flows;
    for (FlowId id = 0; id < 80; ++id) {
      NodeId s = pick(rng);
      NodeId d = pick(rng);
      while (d == s) d = pick(rng);
      flows.push_back(Flow{id, s, d, std::min(0.9, rate(rng))});
    }
    const auto result = assign_flows(t, flows);
    EXPECT_EQ(result.accepted.size() + result.rejected.size(), flows.size());
    const auto recomputed = link_loads(t, result);
    ASSERT_EQ(recomputed, result.load);  // bit for bit
    for (LinkId j = 0; j < t.link_count(); ++j) EXPECT_LT(recomputed[j], t.link(j).capacity);
    for (const auto& a : result.accepted) {
      EXPECT_EQ(a.path.front(), a.flow.src);
      EXPECT_EQ(a.path.back(), a.flow.dst);
      EXPECT_NO_THROW(HopPath(t, a.path));
    }
    EXPECT_LE(result.cycles, 50);
    ASSERT_EQ(result.cost_history.size(), static_cast<std::size_t>(result.cycles) + 1);
    for (std::size_t k = 1; k < result.cost_history.size(); ++k) {
      EXPECT_LE(result.cost_history[k], result.cost_history[k - 1] + 1e-12);
    }
    EXPECT_DOUBLE_EQ(result.cost_history.back(), network_cost(t, result.load));

    const auto again = assign_flows(t, flows);
    ASSERT_EQ(again.accepted.size(), result.accepted.size());
    for (std::size_t k = 0; k < again.accepted.size(); ++k) {
      EXPECT_EQ(again.accepted[k].path, result.accepted[k].path);
    }
    EXPECT_EQ(again.load, result.load);
  }
}

TEST(AssignFlows, CycleLimit) {
  std::mt19937_64 rng(42);
  testing::RandomGraphSpec spec;
  spec.nodes = 10;
  spec.capacity = 1.0;
  const auto t = testing::random_topology(rng, spec);
  DemandConfig cfg;
  cfg.pe_fraction = 1.0;
  cfg.active_pair_fraction = 1.0;
  cfg.rate_sum_fraction_of_capacity = 0.3;
  const auto flows = generate_demands(t, cfg);
  AssignOptions none;
  none.max_cycles = 0;
  const auto r0 = assign_flows(t, flows, none);
  EXPECT_EQ(r0.cycles, 0);
  EXPECT_EQ(r0.cost_history.size(), 1u);
  const auto r = assign_flows(t, flows);
  EXPECT_LE(r.cost_history.back(), r0.cost_history.back());
}

TEST(NetworkCost, Formula) {
  const auto t = diamond();
  std::vector<double> load(t.link_count(), 0.0);
  EXPECT_EQ(network_cost(t, load), 0.0);
  load[0] = 0.5;
  load[1] = 0.75;
  EXPECT_DOUBLE_EQ(network_cost(t, load), 1.0 + 3.0);
}

TEST(Demands, Statistics) {
  const auto t = testing::colt_sized_standin(1);
  const DemandConfig defaults;
  const double capacity = 1e9;
  double directions = 0;
  double flows_total = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    DemandConfig cfg;
    cfg.seed = seed;
    const auto flows = generate_demands(t, cfg);
    std::map<std::pair<NodeId, NodeId>, std::vector<double>> by_direction;
    std::set<NodeId> pes;
    for (std::size_t i = 0; i < flows.size(); ++i) {
      ASSERT_EQ(flows[i].id, i);
      ASSERT_NE(flows[i].src, flows[i].dst);
      ASSERT_GT(flows[i].rate, 0.0);
      by_direction[{flows[i].src, flows[i].dst}].push_back(flows[i].rate);
      pes.insert(flows[i].src);
      pes.insert(flows[i].dst);
    }
    // Every active couple is active both ways.
    for (const auto& [dir, rates] : by_direction) {
      ASSERT_TRUE(by_direction.count({dir.second, dir.first}));
      double sum = 0.0;
      for (double r : rates) sum += r;
      ASSERT_NEAR(sum, defaults.rate_sum_fraction_of_capacity * capacity, 1e-12 * capacity);
    }
    ASSERT_EQ(by_direction.size(), 2u * 366u);  // round(0.2 * C(61, 2)) couples
    ASSERT_LE(pes.size(), 61u);
    directions += static_cast<double>(by_direction.size());
    flows_total += static_cast<double>(flows.size());
  }
  const double mean = flows_total / directions;
  EXPECT_NEAR(mean, 3.5, 0.05 * 3.5);
}

TEST(Demands, DegenerateMeanGivesOneFlowPerDirection) {
  const auto t = testing::colt_sized_standin(2);
  DemandConfig cfg;
  cfg.mean_flows_per_direction = 1.0;
  const auto flows = generate_demands(t, cfg);
  EXPECT_EQ(flows.size(), 2u * 366u);
  for (const auto& f : flows) EXPECT_DOUBLE_EQ(f.rate, 0.1 * 1e9);
}

TEST(Demands, SeedReproducible) {
  const auto t = testing::colt_sized_standin(3);
  DemandConfig cfg;
  cfg.seed = 77;
  EXPECT_EQ(generate_demands(t, cfg), generate_demands(t, cfg));
  auto other = cfg;
  other.seed = 78;
  EXPECT_NE(generate_demands(t, cfg), generate_demands(t, other));
}

TEST(Demands, ConfigErrors) {
  const auto t = testing::load_f7();
  for (auto mutate : std::vector<void (*)(DemandConfig&)>{
           [](DemandConfig& c) { c.pe_fraction = 0.0; },
           [](DemandConfig& c) { c.pe_fraction = 1.5; },
           [](DemandConfig& c) { c.active_pair_fraction = -0.1; },
           [](DemandConfig& c) { c.rate_sum_fraction_of_capacity = 0.0; },
           [](DemandConfig& c) { c.mean_flows_per_direction = 0.5; },
       }) {
    DemandConfig cfg;
    mutate(cfg);
    EXPECT_THROW(generate_demands(t, cfg), ConfigError);
  }
  // 40% of 7 nodes is 3 PEs, 20% of 3 couples rounds to 1.
  EXPECT_NO_THROW(generate_demands(t, DemandConfig{}));
  DemandConfig tiny;
  tiny.pe_fraction = 0.1;
  EXPECT_THROW(generate_demands(t, tiny), ConfigError);
  const auto two = parse_json(R"({"nodes":[{"name":"a"},{"name":"b"}],
    "edges":[{"a":"a","b":"b","cost":1,"capacity":1}]})");
  EXPECT_THROW(generate_demands(two, DemandConfig{}), ConfigError);
}

TEST(Demands, JsonLinesRoundTrip) {
  const auto t = testing::load_f7();
  DemandConfig cfg;
  cfg.pe_fraction = 1.0;
  cfg.active_pair_fraction = 0.5;
  const auto flows = generate_demands(t, cfg);
  const auto text = emit_demands(t, flows);
  EXPECT_EQ(parse_demands(t, text), flows);
  EXPECT_EQ(emit_demands(t, parse_demands(t, text)), text);
  EXPECT_EQ(text.substr(0, 7), "{\"id\":0");
}

TEST(Demands, ParseErrors) {
  const auto t = testing::load_f7();
  EXPECT_TRUE(parse_demands(t, "\n  \n").empty());
  EXPECT_THROW(parse_demands(t, "{"), ParseError);
  EXPECT_THROW(parse_demands(t, R"({"id":0,"src":"n1","dst":"n2"})"), ParseError);
  EXPECT_THROW(parse_demands(t, R"({"id":0,"src":"n1","dst":"n9","rate":1})"), ParseError);
  EXPECT_THROW(parse_demands(t, R"({"id":0,"src":"n1","dst":"n1","rate":1})"), ParseError);
  EXPECT_THROW(parse_demands(t, R"({"id":0,"src":"n1","dst":"n2","rate":0})"), ParseError);
  EXPECT_THROW(parse_demands(t, R"({"id":-1,"src":"n1","dst":"n2","rate":1})"), ParseError);
  try {
    parse_demands(t, "{\"id\":0,\"src\":\"n1\",\"dst\":\"n2\",\"rate\":1}\n{bad");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

}  // namespace
}  // namespace pmsr
