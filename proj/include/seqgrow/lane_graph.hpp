#pragma once

// Directed lane graph: topological nodes joined by quadratic Bezier
// centerlines. Cycles and antiparallel edge pairs are legal; self-loops and
// repeated ordered pairs are not, since connectivity is a binary matrix.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seqgrow/point.hpp"

namespace seqgrow {

using NodeId = std::uint32_t;

struct Node {
  NodeId id = 0;
  Point2 pos;
  // Id the node carried in external data before canonicalization.
  std::optional<std::int64_t> label;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
  NodeId from = 0;
  NodeId to = 0;
  // Middle control point of the centerline.
  Point2 ctrl;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct LaneGraph {
  std::vector<Node> nodes;
  std::vector<Edge> edges;

  std::size_t size() const { return nodes.size(); }
  bool empty() const { return nodes.empty(); }

  const Node& node(NodeId id) const { return nodes.at(id); }

  // Appends a node with id == current size and returns that id.
  NodeId add_node(Point2 pos);
  void add_edge(NodeId from, NodeId to, Point2 ctrl) { edges.push_back({from, to, ctrl}); }
  // Straight edge; the control point sits at the chord midpoint.
  void add_straight_edge(NodeId from, NodeId to);

  const Edge* find_edge(NodeId from, NodeId to) const;

  friend bool operator==(const LaneGraph&, const LaneGraph&) = default;
};

enum class ViolationKind {
  kNonCanonicalId,
  kDuplicateNodeId,
  kNonFinitePosition,
  kDanglingEdge,
  kSelfLoop,
  kDuplicateEdge,
  kNonFiniteControl,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  // Index into nodes or edges, depending on kind.
  std::size_t index = 0;
  std::string message;
};

using ValidationReport = std::vector<Violation>;

ValidationReport validate(const LaneGraph& g);
bool is_valid(const LaneGraph& g);
// Throws InvalidGraph carrying the first violation.
void require_valid(const LaneGraph& g);

// Remaps arbitrary unique node ids to 0..N-1 in node order and stores the
// original id in Node::label. Throws InvalidGraph on duplicate ids or edges
// that reference unknown ids.
LaneGraph canonicalize(const LaneGraph& g);

// Dense row-major N x N binary matrix.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;
  explicit AdjacencyMatrix(std::size_t n) : n_(n), bits_(n * n, 0) {}

  std::size_t size() const { return n_; }
  bool operator()(std::size_t i, std::size_t j) const { return bits_[i * n_ + j] != 0; }
  void set(std::size_t i, std::size_t j, bool v = true) { bits_[i * n_ + j] = v ? 1 : 0; }
  const std::vector<std::uint8_t>& data() const { return bits_; }

  friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> bits_;
};

AdjacencyMatrix adjacency_matrix(const LaneGraph& g);

using NodePair = std::pair<NodeId, NodeId>;

// Transitive closure as a matrix: entry (i,j) set iff a directed path of
// length >= 1 runs from i to j and i != j.
AdjacencyMatrix reachability_matrix(const LaneGraph& g);

// Sorted list of ordered pairs (i,j), i != j, with a directed path i -> j.
std::vector<NodePair> reachable_pairs(const LaneGraph& g);

struct Degrees {
  std::vector<std::size_t> in;
  std::vector<std::size_t> out;
};

Degrees degrees(const LaneGraph& g);

bool has_directed_cycle(const LaneGraph& g);
bool has_antiparallel_pair(const LaneGraph& g);

}  // namespace seqgrow
