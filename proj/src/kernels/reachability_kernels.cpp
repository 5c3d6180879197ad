#include <cstddef>
#include <vector>

#include "seqgrow/kernels.hpp"

namespace seqgrow::kernels {
namespace {

// Below this size a thread team costs more than the closure itself.
constexpr std::size_t kParallelMinNodes = 64;

void closure_row(const AdjacencyMatrix& adj, std::size_t src, std::vector<std::size_t>& stack,
                 AdjacencyMatrix& out) {
  const std::size_t n = adj.size();
  std::vector<std::uint8_t> seen(n, 0);
  stack.clear();
  for (std::size_t j = 0; j < n; ++j) {
    if (adj(src, j) && !seen[j]) {
      seen[j] = 1;
      stack.push_back(j);
    }
  }
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < n; ++j) {
      if (adj(v, j) && !seen[j]) {
        seen[j] = 1;
        stack.push_back(j);
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (seen[j] && j != src) out.set(src, j);
  }
}

}  // namespace

AdjacencyMatrix transitive_closure(const AdjacencyMatrix& adj) {
  const std::size_t n = adj.size();
  AdjacencyMatrix out(n);
  // Rows are disjoint, so concurrent set() calls never touch the same byte.
#pragma omp parallel if (n >= kParallelMinNodes)
  {
    std::vector<std::size_t> stack;
#pragma omp for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
      closure_row(adj, static_cast<std::size_t>(i), stack, out);
    }
  }
  return out;
}

namespace serial {

AdjacencyMatrix transitive_closure(const AdjacencyMatrix& adj) {
  AdjacencyMatrix out(adj.size());
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < adj.size(); ++i) closure_row(adj, i, stack, out);
  return out;
}

}  // namespace serial
}  // namespace seqgrow::kernels
