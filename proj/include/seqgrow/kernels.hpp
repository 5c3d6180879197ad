#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version and a serial
// reference in kernels::serial with identical results; the parallel versions
// write per-element outputs and never reduce floating-point values across
// threads, so results are bitwise independent of the thread count.

#include <span>
#include <vector>

#include "seqgrow/lane_graph.hpp"
#include "seqgrow/point.hpp"

namespace seqgrow::kernels {

// Closure by one BFS per source row; parallel over source rows.
AdjacencyMatrix transitive_closure(const AdjacencyMatrix& adj);

// For each query point, the Euclidean distance to the nearest reference
// point. Returns +inf entries when reference is empty.
std::vector<double> nearest_distances(std::span<const Point2> queries, std::span<const Point2> reference);

namespace serial {

AdjacencyMatrix transitive_closure(const AdjacencyMatrix& adj);
std::vector<double> nearest_distances(std::span<const Point2> queries, std::span<const Point2> reference);

}  // namespace serial

}  // namespace seqgrow::kernels
