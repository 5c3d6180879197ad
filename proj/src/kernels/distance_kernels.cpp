#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "seqgrow/kernels.hpp"

namespace seqgrow::kernels {
namespace {

constexpr std::size_t kParallelMinWork = 1 << 14;

double nearest_one(Point2 q, std::span<const Point2> reference) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point2& r : reference) {
    const double d2 = squared_distance(q, r);
    if (d2 < best) best = d2;
  }
  return std::sqrt(best);
}

}  // namespace

std::vector<double> nearest_distances(std::span<const Point2> queries, std::span<const Point2> reference) {
  std::vector<double> out(queries.size());
  const std::size_t work = queries.size() * reference.size();
#pragma omp parallel for schedule(static) if (work >= kParallelMinWork)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(queries.size()); ++i) {
    out[static_cast<std::size_t>(i)] = nearest_one(queries[static_cast<std::size_t>(i)], reference);
  }
  return out;
}

namespace serial {

std::vector<double> nearest_distances(std::span<const Point2> queries, std::span<const Point2> reference) {
  std::vector<double> out;
  out.reserve(queries.size());
  for (const Point2& q : queries) out.push_back(nearest_one(q, reference));
  return out;
}

}  // namespace serial
}  // namespace seqgrow::kernels
