#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "pmsr/error.hpp"
#include "pmsr/routing.hpp"
#include "support.hpp"

namespace pmsr {
namespace {

using testing::load_f7;
using testing::node_id;
using testing::node_path;

class F7Routing : public ::testing::Test {
 protected:
  NodeId n(int i) const { return node_id(t, "n" + std::to_string(i)); }

  Topology t = load_f7();
  RoutingView rv = build_routing(t);
};

TEST_F(F7Routing, DistancesAndCounts) {
  EXPECT_EQ(rv.distance(n(1), n(5)), 3);
  EXPECT_EQ(spn(rv, n(1), n(5)), 2u);
  EXPECT_EQ(spn(rv, n(1), n(2)), 1u);
  EXPECT_EQ(rv.distance(n(1), n(7)), 5);
  const auto hops = rv.nexthops(n(1), n(2));
  EXPECT_EQ(std::vector<NodeId>(hops.begin(), hops.end()), std::vector<NodeId>{n(2)});
  for (NodeId v = 0; v < t.node_count(); ++v) {
    EXPECT_EQ(rv.spn(v, v), 1u);
    EXPECT_EQ(rv.distance(v, v), 0);
    EXPECT_TRUE(rv.nexthops(v, v).empty());
  }
}

TEST_F(F7Routing, ShortestPathSets) {
  EXPECT_EQ(sp_set(rv, n(2), n(4)), (std::vector<NodePath>{node_path(t, {"n2", "n3", "n4"})}));
  EXPECT_EQ(sp_set(rv, n(3), n(5)),
            (std::vector<NodePath>{node_path(t, {"n3", "n4", "n5"}), node_path(t, {"n3", "n5"})}));
  EXPECT_EQ(sp_set(rv, n(1), n(5)),
            (std::vector<NodePath>{node_path(t, {"n1", "n3", "n4", "n5"}),
                                   node_path(t, {"n1", "n3", "n5"})}));
  EXPECT_EQ(sp_set(rv, n(6), n(6)), (std::vector<NodePath>{{n(6)}}));
}

TEST_F(F7Routing, BiasedPaths) {
  EXPECT_EQ(biased_paths(rv, t, n(1), n(5)),
            (std::vector<NodePath>{node_path(t, {"n1", "n3", "n5"})}));
  EXPECT_EQ(spn_star(rv, t, n(1), n(5)), 1u);
  EXPECT_EQ(biased_paths(rv, t, n(4), n(7)),
            (std::vector<NodePath>{node_path(t, {"n4", "n5", "n7"})}));
  // Direct link at the source is taken even though 3-4-5 ties with 3-5.
  EXPECT_EQ(biased_paths(rv, t, n(3), n(5)),
            (std::vector<NodePath>{node_path(t, {"n3", "n5"})}));
  EXPECT_EQ(unique_biased_path(rv, t, n(4), n(7)), node_path(t, {"n4", "n5", "n7"}));
  // n2 -> n5: 2-3-5 via n3's direct link only.
  EXPECT_EQ(spn_star(rv, t, n(2), n(5)), 1u);
}

TEST_F(F7Routing, PathCost) {
  EXPECT_EQ(path_cost(t, node_path(t, {"n1", "n3", "n5", "n7"})), 6);
  EXPECT_EQ(path_cost(t, node_path(t, {"n1", "n5"})), kUnreachable);
  EXPECT_EQ(path_cost(t, node_path(t, {"n4"})), 0);
}

TEST(Routing, UnreachablePair) {
  // Topology construction does not validate, so a split graph can be built.
  std::vector<Node> nodes{{0, "a", auto_loopback(0)}, {1, "b", auto_loopback(1)},
                          {2, "c", auto_loopback(2)}};
  const Topology t(nodes, {Link{0, 1, 1, 1.0}, Link{1, 0, 1, 1.0}});
  const auto rv = build_routing(t);
  EXPECT_FALSE(rv.reachable(0, 2));
  EXPECT_EQ(rv.spn(0, 2), 0u);
  EXPECT_TRUE(rv.nexthops(0, 2).empty());
  EXPECT_THROW(sp_set(rv, 0, 2), std::invalid_argument);
  EXPECT_THROW(biased_paths(rv, t, 0, 2), std::invalid_argument);
}

// Chain of k diamonds: 2^k equal-cost paths end to end.
Topology diamond_chain(int k) {
  std::vector<Node> nodes;
  std::vector<Link> links;
  auto add_node = [&] {
    const auto id = static_cast<NodeId>(nodes.size());
    nodes.push_back(Node{id, "d" + std::to_string(id), auto_loopback(id)});
    return id;
  };
  auto add_edge = [&](NodeId a, NodeId b) {
    links.push_back(Link{a, b, 1, 1.0});
    links.push_back(Link{b, a, 1, 1.0});
  };
  NodeId left = add_node();
  for (int i = 0; i < k; ++i) {
    const NodeId up = add_node();
    const NodeId down = add_node();
    const NodeId right = add_node();
    add_edge(left, up);
    add_edge(left, down);
    add_edge(up, right);
    add_edge(down, right);
    left = right;
  }
  return Topology(std::move(nodes), std::move(links));
}

TEST(Routing, CountsSaturate) {
  const auto t = diamond_chain(40);
  const auto rv = build_routing(t);
  const NodeId last = static_cast<NodeId>(t.node_count() - 1);
  EXPECT_EQ(rv.spn(0, last), kSpnSaturation);
  EXPECT_EQ(rv.spn(0, 3 * 10), std::uint64_t{1} << 10);
}

TEST(Routing, EnumerationCap) {
  const auto t = diamond_chain(6);
  const auto rv = build_routing(t);
  const NodeId last = static_cast<NodeId>(t.node_count() - 1);
  EXPECT_EQ(sp_set(rv, 0, last).size(), 64u);
  EXPECT_THROW(sp_set(rv, 0, last, 63), OverflowError);
  EXPECT_EQ(sp_set(rv, 0, last, 64).size(), 64u);
}

TEST(Routing, MatchesBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(11);
  int pairs = 0;
  for (int g = 0; g < 120; ++g) {
    testing::RandomGraphSpec spec;
    spec.nodes = 2 + g % 9;
    spec.extra_edge_probability = 0.15 + 0.05 * (g % 6);
    const auto t = testing::random_topology(rng, spec);
    const auto rv = build_routing(t);
    const auto fw = testing::floyd_warshall(t);
    for (NodeId x = 0; x < t.node_count(); ++x) {
      for (NodeId y = 0; y < t.node_count(); ++y) {
        ++pairs;
        ASSERT_EQ(rv.distance(x, y), fw[x][y]);
        const auto expected = testing::brute_shortest_paths(t, x, y);
        const auto actual = sp_set(rv, x, y);
        ASSERT_EQ(actual, expected);
        ASSERT_EQ(rv.spn(x, y), expected.size());
        for (const auto& p : actual) ASSERT_EQ(path_cost(t, p), fw[x][y]);

        std::set<NodeId> first_hops;
        for (const auto& p : expected) {
          if (p.size() > 1) first_hops.insert(p[1]);
        }
        const auto hops = rv.nexthops(x, y);
        ASSERT_EQ(std::vector<NodeId>(hops.begin(), hops.end()),
                  std::vector<NodeId>(first_hops.begin(), first_hops.end()));

        const auto biased = testing::brute_biased_paths(t, fw, x, y);
        ASSERT_EQ(biased_paths(rv, t, x, y), biased);
        ASSERT_EQ(spn_star(rv, t, x, y), biased.size());
        const auto unique = unique_biased_path(rv, t, x, y);
        ASSERT_EQ(unique.has_value(), biased.size() == 1);
        if (unique) {
          ASSERT_EQ(*unique, biased.front());
        }
        for (const auto& p : biased) {
          ASSERT_EQ(p.front(), x);
          ASSERT_EQ(p.back(), y);
          ASSERT_EQ(std::set<NodeId>(p.begin(), p.end()).size(), p.size());
        }
      }
    }
  }
  EXPECT_GT(pairs, 2000);
}

TEST(Routing, LemmaUniquePathHasUniquePrefixes) {
  std::mt19937_64 rng(21);
  int checked = 0;
  for (int sample = 0; sample < 1500; ++sample) {
    testing::RandomGraphSpec spec;
    spec.nodes = 3 + sample % 8;
    const auto t = testing::random_topology(rng, spec);
    const auto rv = build_routing(t);
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(t.node_count() - 1));
    const NodeId s = pick(rng);
    const NodeId d = pick(rng);
    if (rv.spn(s, d) != 1) continue;
    ++checked;
    const auto p = sp_set(rv, s, d).front();
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
      ASSERT_EQ(rv.spn(s, p[i]), 1u);
      ASSERT_EQ(sp_set(rv, s, p[i]).front(), NodePath(p.begin(), p.begin() + i + 1));
    }
  }
  EXPECT_GE(checked, 1000);
}

TEST(Routing, LemmaAmbiguousTailMakesEveryPathThroughItAmbiguous) {
  std::mt19937_64 rng(22);
  int checked = 0;
  for (int sample = 0; sample < 1500; ++sample) {
    testing::RandomGraphSpec spec;
    spec.nodes = 3 + sample % 8;
    const auto t = testing::random_topology(rng, spec);
    const auto rv = build_routing(t);
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(t.node_count() - 1));
    const NodeId y = pick(rng);
    const NodeId d = pick(rng);
    ++checked;
    if (rv.spn(y, d) <= 1) continue;
    for (NodeId x = 0; x < t.node_count(); ++x) {
      const auto paths = sp_set(rv, x, d);
      const bool through_y = std::any_of(paths.begin(), paths.end(), [&](const NodePath& p) {
        return std::find(p.begin(), p.end(), y) != p.end();
      });
      if (through_y) {
        ASSERT_GT(rv.spn(x, d), 1u);
      }
    }
  }
  EXPECT_GE(checked, 1000);
}

TEST(Routing, Deterministic) {
  std::mt19937_64 rng(3);
  testing::RandomGraphSpec spec;
  spec.nodes = 9;
  const auto t = testing::random_topology(rng, spec);
  const auto a = build_routing(t);
  const auto b = build_routing(t);
  for (NodeId x = 0; x < t.node_count(); ++x) {
    for (NodeId y = 0; y < t.node_count(); ++y) {
      EXPECT_EQ(a.distance(x, y), b.distance(x, y));
      EXPECT_EQ(a.spn(x, y), b.spn(x, y));
      EXPECT_TRUE(std::equal(a.nexthops(x, y).begin(), a.nexthops(x, y).end(),
                             b.nexthops(x, y).begin(), b.nexthops(x, y).end()));
    }
  }
}

}  // namespace
}  // namespace pmsr
