#include "seqgrow/assignment.hpp"

#include <algorithm>
#include <limits>

namespace seqgrow {

std::vector<std::optional<std::size_t>> min_cost_assignment(const CostMatrix& m) {
  // Shortest augmenting path formulation on a square n x n padding of the
  // input; padded cells cost zero. 1-based potentials as in the classic
  // e-maxx layout.
  const std::size_t n = std::max(m.rows, m.cols);
  std::vector<std::optional<std::size_t>> result(m.rows);
  if (n == 0) return result;

  auto cost = [&m](std::size_t r, std::size_t c) {
    return (r < m.rows && c < m.cols) ? m(r, c) : 0.0;
  };
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);

  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t r = p[j] - 1;
    if (r < m.rows && j - 1 < m.cols) result[r] = j - 1;
  }
  return result;
}

std::vector<std::optional<std::size_t>> gated_assignment(const CostMatrix& m, double threshold) {
  // Any pair above the threshold costs more than the largest possible sum
  // of admissible pairs, so cardinality wins before total distance.
  const std::size_t n = std::max(m.rows, m.cols);
  const double unmatched = (static_cast<double>(n) + 1.0) * std::max(threshold, 1e-12);
  CostMatrix gated{m.rows, m.cols, m.cost};
  for (double& c : gated.cost) {
    if (!(c <= threshold)) c = unmatched;
  }
  // Padding must cost as much as a rejected pair.
  const std::size_t size = n;
  CostMatrix square{size, size, std::vector<double>(size * size, unmatched)};
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) square.cost[r * size + c] = gated(r, c);
  }
  const auto full = min_cost_assignment(square);
  std::vector<std::optional<std::size_t>> result(m.rows);
  for (std::size_t r = 0; r < m.rows; ++r) {
    if (full[r] && *full[r] < m.cols && m(r, *full[r]) <= threshold) result[r] = full[r];
  }
  return result;
}

}  // namespace seqgrow
