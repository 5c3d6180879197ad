#include "seqgrow/node_ordering.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <tuple>

#include "seqgrow/error.hpp"

namespace seqgrow {
namespace {

bool coord_less(const LaneGraph& g, NodeId a, NodeId b) {
  const Point2 pa = g.nodes[a].pos;
  const Point2 pb = g.nodes[b].pos;
  return std::tie(pa.x, pa.y, a) < std::tie(pb.x, pb.y, b);
}

// Undirected neighbor lists, each sorted by (x, y, id).
std::vector<std::vector<NodeId>> undirected_neighbors(const LaneGraph& g) {
  std::vector<std::vector<NodeId>> nbrs(g.size());
  for (const Edge& e : g.edges) {
    nbrs[e.from].push_back(e.to);
    nbrs[e.to].push_back(e.from);
  }
  for (auto& list : nbrs) {
    std::sort(list.begin(), list.end(), [&g](NodeId a, NodeId b) { return coord_less(g, a, b); });
    // Antiparallel pairs list the same neighbor twice.
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return nbrs;
}

// Nodes sorted by distance to the ego origin, ties by id; traversal roots are
// drawn from this list in order.
std::vector<NodeId> by_origin_distance(const LaneGraph& g) {
  std::vector<NodeId> ids(g.size());
  std::iota(ids.begin(), ids.end(), NodeId{0});
  std::stable_sort(ids.begin(), ids.end(), [&g](NodeId a, NodeId b) {
    return norm(g.nodes[a].pos) < norm(g.nodes[b].pos);
  });
  return ids;
}

std::vector<NodeId> dfs_order(const LaneGraph& g) {
  const auto nbrs = undirected_neighbors(g);
  std::vector<bool> visited(g.size(), false);
  std::vector<NodeId> order;
  order.reserve(g.size());
  // (node, index of the next neighbor to try)
  std::vector<std::pair<NodeId, std::size_t>> stack;
  for (NodeId root : by_origin_distance(g)) {
    if (visited[root]) continue;
    visited[root] = true;
    order.push_back(root);
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next == nbrs[v].size()) {
        stack.pop_back();
        continue;
      }
      const NodeId w = nbrs[v][next++];
      if (!visited[w]) {
        visited[w] = true;
        order.push_back(w);
        stack.emplace_back(w, 0);
      }
    }
  }
  return order;
}

std::vector<NodeId> bfs_order(const LaneGraph& g) {
  const auto nbrs = undirected_neighbors(g);
  std::vector<bool> visited(g.size(), false);
  std::vector<NodeId> order;
  order.reserve(g.size());
  std::deque<NodeId> queue;
  for (NodeId root : by_origin_distance(g)) {
    if (visited[root]) continue;
    visited[root] = true;
    queue.push_back(root);
    while (!queue.empty()) {
      const NodeId v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (NodeId w : nbrs[v]) {
        if (!visited[w]) {
          visited[w] = true;
          queue.push_back(w);
        }
      }
    }
  }
  return order;
}

std::vector<NodeId> coord_order(const LaneGraph& g) {
  std::vector<NodeId> ids(g.size());
  std::iota(ids.begin(), ids.end(), NodeId{0});
  std::sort(ids.begin(), ids.end(), [&g](NodeId a, NodeId b) { return coord_less(g, a, b); });
  return ids;
}

std::vector<NodeId> center_order(const LaneGraph& g) {
  Point2 sum;
  for (const Node& n : g.nodes) sum = sum + n.pos;
  const Point2 centroid = sum / static_cast<double>(g.size());
  std::vector<NodeId> ids(g.size());
  std::iota(ids.begin(), ids.end(), NodeId{0});
  std::stable_sort(ids.begin(), ids.end(), [&g, centroid](NodeId a, NodeId b) {
    return distance(g.nodes[a].pos, centroid) < distance(g.nodes[b].pos, centroid);
  });
  return ids;
}

}  // namespace

std::string_view to_string(OrderingStrategy s) {
  switch (s) {
    case OrderingStrategy::kDfs: return "dfs";
    case OrderingStrategy::kBfs: return "bfs";
    case OrderingStrategy::kCoord: return "coord";
    case OrderingStrategy::kCenter: return "center";
  }
  return "unknown";
}

std::optional<OrderingStrategy> parse_ordering(std::string_view name) {
  for (OrderingStrategy s : kAllOrderings) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<NodeId> order_nodes(const LaneGraph& g, OrderingStrategy strategy) {
  require_valid(g);
  if (g.empty()) throw InvalidGraph("cannot order the nodes of an empty graph");
  switch (strategy) {
    case OrderingStrategy::kDfs: return dfs_order(g);
    case OrderingStrategy::kBfs: return bfs_order(g);
    case OrderingStrategy::kCoord: return coord_order(g);
    case OrderingStrategy::kCenter: return center_order(g);
  }
  return {};
}

}  // namespace seqgrow
