#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "seqgrow/lane_graph.hpp"

namespace seqgrow {

// Node visit order driving serialization.
//   kDfs, kBfs: traversal of the undirected view, starting at the node nearest
//     the ego origin, neighbors taken in ascending (x, y, id); a finished
//     component restarts from the nearest unvisited node.
//   kCoord: ascending (x, y, id).
//   kCenter: ascending distance to the centroid of node positions, then id.
enum class OrderingStrategy { kDfs, kBfs, kCoord, kCenter };

inline constexpr OrderingStrategy kAllOrderings[] = {OrderingStrategy::kDfs, OrderingStrategy::kBfs,
                                                     OrderingStrategy::kCoord, OrderingStrategy::kCenter};

std::string_view to_string(OrderingStrategy s);
std::optional<OrderingStrategy> parse_ordering(std::string_view name);

// Throws InvalidGraph for an empty or invalid graph.
std::vector<NodeId> order_nodes(const LaneGraph& g, OrderingStrategy strategy);

}  // namespace seqgrow
