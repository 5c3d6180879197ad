#pragma once

#include <optional>

#include "seqgrow/lane_graph.hpp"

namespace seqgrow {

struct ResegConfig {
  // Maximum centerline length after splitting, meters.
  std::optional<double> interval;
  bool merge_continuous = false;
};

inline constexpr std::size_t kMergeSamplesPerCurve = 64;

// A continuous node has exactly one incoming edge u->v and one outgoing edge
// v->w with u != w. Each such node is removed and its two curves replaced by a
// single u->w edge whose control point is refit to samples of both curves.
// Nodes whose removal would create a duplicate u->w edge are kept. Nodes are
// visited in ascending id until nothing changes; survivors are renumbered
// densely in their original order.
LaneGraph merge_continuous_nodes(const LaneGraph& g);

// Replaces every edge longer than interval by m = ceil(L / interval) pieces
// of equal arc length, cut by exact subdivision. New nodes are appended in
// edge order. Throws std::invalid_argument for interval <= 0.
LaneGraph split_fixed_length(const LaneGraph& g, double interval);

// Split first (when configured), then merge (when configured).
LaneGraph resegment(const LaneGraph& g, const ResegConfig& cfg);

}  // namespace seqgrow
