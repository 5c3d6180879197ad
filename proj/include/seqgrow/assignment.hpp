#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace seqgrow {

// Row-major rows x cols cost matrix.
struct CostMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> cost;

  double operator()(std::size_t r, std::size_t c) const { return cost[r * cols + c]; }
};

// Minimum-cost assignment (Hungarian method, O(n^3)) over a rectangular
// matrix. Entry r of the result is the column assigned to row r, or nullopt
// when the row is left over because rows > cols.
std::vector<std::optional<std::size_t>> min_cost_assignment(const CostMatrix& m);

// Threshold-gated one-to-one matching: maximizes the number of pairs with
// cost <= threshold, then minimizes their total cost. Pairs above the
// threshold never appear in the result.
std::vector<std::optional<std::size_t>> gated_assignment(const CostMatrix& m, double threshold);

}  // namespace seqgrow
