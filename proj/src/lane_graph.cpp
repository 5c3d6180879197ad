#include "seqgrow/lane_graph.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "seqgrow/error.hpp"
#include "seqgrow/kernels.hpp"

namespace seqgrow {

NodeId LaneGraph::add_node(Point2 pos) {
  const auto id = static_cast<NodeId>(nodes.size());
  nodes.push_back({id, pos, std::nullopt});
  return id;
}

void LaneGraph::add_straight_edge(NodeId from, NodeId to) {
  add_edge(from, to, 0.5 * (nodes.at(from).pos + nodes.at(to).pos));
}

const Edge* LaneGraph::find_edge(NodeId from, NodeId to) const {
  for (const auto& e : edges) {
    if (e.from == from && e.to == to) return &e;
  }
  return nullptr;
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kNonCanonicalId: return "non_canonical_id";
    case ViolationKind::kDuplicateNodeId: return "duplicate_node_id";
    case ViolationKind::kNonFinitePosition: return "non_finite_position";
    case ViolationKind::kDanglingEdge: return "dangling_edge";
    case ViolationKind::kSelfLoop: return "self_loop";
    case ViolationKind::kDuplicateEdge: return "duplicate_edge";
    case ViolationKind::kNonFiniteControl: return "non_finite_control";
  }
  return "unknown";
}

ValidationReport validate(const LaneGraph& g) {
  ValidationReport report;
  auto add = [&report](ViolationKind kind, std::size_t index, std::string msg) {
    report.push_back({kind, index, std::move(msg)});
  };

  std::set<NodeId> seen_ids;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const Node& n = g.nodes[i];
    if (!seen_ids.insert(n.id).second) {
      add(ViolationKind::kDuplicateNodeId, i, "node id " + std::to_string(n.id) + " appears more than once");
    }
    if (n.id != i) {
      add(ViolationKind::kNonCanonicalId, i,
          "node at index " + std::to_string(i) + " has id " + std::to_string(n.id));
    }
    if (!is_finite(n.pos)) {
      add(ViolationKind::kNonFinitePosition, i, "node " + std::to_string(n.id) + " has a non-finite position");
    }
  }

  std::set<std::pair<NodeId, NodeId>> pairs;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const Edge& e = g.edges[i];
    const std::string name = "edge (" + std::to_string(e.from) + "," + std::to_string(e.to) + ")";
    if (!seen_ids.contains(e.from) || !seen_ids.contains(e.to)) {
      add(ViolationKind::kDanglingEdge, i, name + " references a missing node");
    }
    if (e.from == e.to) {
      add(ViolationKind::kSelfLoop, i, name + " is a self-loop");
    }
    if (!pairs.insert({e.from, e.to}).second) {
      add(ViolationKind::kDuplicateEdge, i, name + " duplicates an earlier edge");
    }
    if (!is_finite(e.ctrl)) {
      add(ViolationKind::kNonFiniteControl, i, name + " has a non-finite control point");
    }
  }
  return report;
}

bool is_valid(const LaneGraph& g) { return validate(g).empty(); }

void require_valid(const LaneGraph& g) {
  const auto report = validate(g);
  if (!report.empty()) {
    throw InvalidGraph(std::string(to_string(report.front().kind)) + ": " + report.front().message);
  }
}

LaneGraph canonicalize(const LaneGraph& g) {
  std::unordered_map<NodeId, NodeId> remap;
  LaneGraph out;
  out.nodes.reserve(g.nodes.size());
  for (const Node& n : g.nodes) {
    const auto dense = static_cast<NodeId>(out.nodes.size());
    if (!remap.emplace(n.id, dense).second) {
      throw InvalidGraph("duplicate_node_id: node id " + std::to_string(n.id) + " appears more than once");
    }
    out.nodes.push_back({dense, n.pos, n.label ? n.label : std::optional<std::int64_t>(n.id)});
  }
  out.edges.reserve(g.edges.size());
  for (const Edge& e : g.edges) {
    const auto from = remap.find(e.from);
    const auto to = remap.find(e.to);
    if (from == remap.end() || to == remap.end()) {
      throw InvalidGraph("dangling_edge: edge (" + std::to_string(e.from) + "," + std::to_string(e.to) +
                         ") references a missing node");
    }
    out.edges.push_back({from->second, to->second, e.ctrl});
  }
  return out;
}

AdjacencyMatrix adjacency_matrix(const LaneGraph& g) {
  require_valid(g);
  AdjacencyMatrix a(g.size());
  for (const Edge& e : g.edges) a.set(e.from, e.to);
  return a;
}

AdjacencyMatrix reachability_matrix(const LaneGraph& g) {
  return kernels::transitive_closure(adjacency_matrix(g));
}

std::vector<NodePair> reachable_pairs(const LaneGraph& g) {
  const AdjacencyMatrix r = reachability_matrix(g);
  std::vector<NodePair> pairs;
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r(i, j)) pairs.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
    }
  }
  return pairs;
}

Degrees degrees(const LaneGraph& g) {
  Degrees d{std::vector<std::size_t>(g.size(), 0), std::vector<std::size_t>(g.size(), 0)};
  for (const Edge& e : g.edges) {
    ++d.out.at(e.from);
    ++d.in.at(e.to);
  }
  return d;
}

bool has_directed_cycle(const LaneGraph& g) {
  // Kahn: a cycle exists iff some node never reaches in-degree zero.
  const std::size_t n = g.size();
  std::vector<std::vector<NodeId>> succ(n);
  std::vector<std::size_t> indeg(n, 0);
  for (const Edge& e : g.edges) {
    succ.at(e.from).push_back(e.to);
    ++indeg.at(e.to);
  }
  std::vector<NodeId> ready;
  for (NodeId i = 0; i < n; ++i) {
    if (indeg[i] == 0) ready.push_back(i);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    const NodeId v = ready.back();
    ready.pop_back();
    ++removed;
    for (NodeId w : succ[v]) {
      if (--indeg[w] == 0) ready.push_back(w);
    }
  }
  return removed != n;
}

bool has_antiparallel_pair(const LaneGraph& g) {
  std::set<std::pair<NodeId, NodeId>> pairs;
  for (const Edge& e : g.edges) pairs.insert({e.from, e.to});
  return std::any_of(g.edges.begin(), g.edges.end(),
                     [&pairs](const Edge& e) { return pairs.contains({e.to, e.from}); });
}

}  // namespace seqgrow
