#include <doctest.h>

#include "seqgrow/error.hpp"
#include "seqgrow/node_ordering.hpp"
#include "test_support.hpp"

using namespace seqgrow;
using Order = std::vector<NodeId>;

namespace {

// Hub 0 near the origin with leaves 1 (12,4), 2 (-9,6), 3 (12,-4).
LaneGraph star() {
  LaneGraph g;
  g.add_node({1, 0.5});
  g.add_node({12, 4});
  g.add_node({-9, 6});
  g.add_node({12, -4});
  g.add_straight_edge(0, 1);
  g.add_straight_edge(2, 0);
  g.add_straight_edge(0, 3);
  return g;
}

}  // namespace

TEST_CASE("order_nodes: star fixture, traversals executed by hand") {
  const LaneGraph g = star();
  // Neighbors of the hub by (x, y): 2 (-9,6), 3 (12,-4), 1 (12,4).
  CHECK(order_nodes(g, OrderingStrategy::kDfs) == Order{0, 2, 3, 1});
  CHECK(order_nodes(g, OrderingStrategy::kBfs) == Order{0, 2, 3, 1});
  CHECK(order_nodes(g, OrderingStrategy::kCoord) == Order{2, 0, 3, 1});
  // Centroid (4, 1.625); distances 3.20, 8.35, 13.72, 9.78.
  CHECK(order_nodes(g, OrderingStrategy::kCenter) == Order{0, 1, 3, 2});
}

TEST_CASE("order_nodes: single node") {
  LaneGraph g;
  g.add_node({30, -20});
  for (auto s : kAllOrderings) CHECK(order_nodes(g, s) == Order{0});
}

TEST_CASE("order_nodes: path laid left to right") {
  LaneGraph g;
  g.add_node({20, 0});
  g.add_node({0.5, 0});
  g.add_node({30, 0});
  g.add_node({10, 0});
  g.add_straight_edge(1, 3);
  g.add_straight_edge(3, 0);
  g.add_straight_edge(2, 0);
  CHECK(order_nodes(g, OrderingStrategy::kDfs) == Order{1, 3, 0, 2});
  CHECK(order_nodes(g, OrderingStrategy::kBfs) == Order{1, 3, 0, 2});
}

TEST_CASE("order_nodes: DFS goes deep, BFS goes wide") {
  LaneGraph g;
  g.add_node({0, 0});
  g.add_node({5, 0});
  g.add_node({10, 0});
  g.add_node({6, 8});
  g.add_straight_edge(0, 1);
  g.add_straight_edge(1, 2);
  g.add_straight_edge(3, 0);
  CHECK(order_nodes(g, OrderingStrategy::kDfs) == Order{0, 1, 2, 3});
  CHECK(order_nodes(g, OrderingStrategy::kBfs) == Order{0, 1, 3, 2});
}

TEST_CASE("order_nodes: traversal ignores edge direction") {
  // Every edge points toward node 0, so a directed walk from 0 goes nowhere.
  LaneGraph g;
  g.add_node({0, 0});
  g.add_node({5, 0});
  g.add_node({10, 0});
  g.add_straight_edge(1, 0);
  g.add_straight_edge(2, 1);
  CHECK(order_nodes(g, OrderingStrategy::kDfs) == Order{0, 1, 2});
}

TEST_CASE("order_nodes: components restart from the nearest unvisited node") {
  LaneGraph g;
  g.add_node({1, 0});
  g.add_node({20, 0});
  g.add_node({-3, 0});
  g.add_node({-30, 0});
  g.add_straight_edge(0, 1);
  g.add_straight_edge(3, 2);
  CHECK(order_nodes(g, OrderingStrategy::kDfs) == Order{0, 1, 2, 3});
  CHECK(order_nodes(g, OrderingStrategy::kBfs) == Order{0, 1, 2, 3});
}

TEST_CASE("order_nodes: ties break by id") {
  LaneGraph g;
  g.add_node({2, 0});
  g.add_node({0, 2});
  g.add_node({-2, 0});
  g.add_node({0, -2});
  // All four are equidistant from both the origin and the centroid.
  CHECK(order_nodes(g, OrderingStrategy::kCenter) == Order{0, 1, 2, 3});
  // No edges: every node is its own component, restarted in id order.
  CHECK(order_nodes(g, OrderingStrategy::kDfs) == Order{0, 1, 2, 3});

  LaneGraph twins;
  twins.add_node({3, 3});
  twins.add_node({3, 3});
  CHECK(order_nodes(twins, OrderingStrategy::kCoord) == Order{0, 1});
}

TEST_CASE("order_nodes: empty graph throws") {
  for (auto s : kAllOrderings) CHECK_THROWS_AS(order_nodes(LaneGraph{}, s), InvalidGraph);
}

TEST_CASE("order_nodes: permutation and determinism on random graphs") {
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const LaneGraph g = testing::random_graph(rng, 1 + rng.index(40), rng.uniform(0.0, 0.15));
    for (auto s : kAllOrderings) {
      const Order o = order_nodes(g, s);
      CHECK(testing::is_permutation_of_nodes(o, g.size()));
      CHECK(o == order_nodes(g, s));
    }
  }
}

TEST_CASE("ordering names") {
  for (auto s : kAllOrderings) CHECK(parse_ordering(to_string(s)) == s);
  CHECK(parse_ordering("dfs") == OrderingStrategy::kDfs);
  CHECK(parse_ordering("center") == OrderingStrategy::kCenter);
  CHECK_FALSE(parse_ordering("random").has_value());
}
