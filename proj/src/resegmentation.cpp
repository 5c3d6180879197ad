#include "seqgrow/resegmentation.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "seqgrow/bezier.hpp"

namespace seqgrow {
namespace {

// Arc-length tolerance for cut placement; pieces end up equal within this.
constexpr double kSplitTolerance = 1e-6;

QuadBezier curve_of(const LaneGraph& g, const Edge& e) {
  return {g.nodes[e.from].pos, e.ctrl, g.nodes[e.to].pos};
}

Point2 merged_control(const QuadBezier& first, const QuadBezier& second) {
  const auto a = sample(first, kMergeSamplesPerCurve);
  const auto b = sample(second, kMergeSamplesPerCurve);
  // Interior samples of the concatenation; the shared junction point once.
  std::vector<Point2> interior(a.begin() + 1, a.end());
  interior.insert(interior.end(), b.begin() + 1, b.end() - 1);
  return fit_control_point(interior, first.p0, second.p2);
}

}  // namespace

LaneGraph merge_continuous_nodes(const LaneGraph& g) {
  require_valid(g);
  const std::size_t n = g.size();
  // Edge slots; removed edges become nullopt.
  std::vector<std::optional<Edge>> edges(g.edges.begin(), g.edges.end());
  std::vector<std::vector<std::size_t>> in(n), out(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out[edges[i]->from].push_back(i);
    in[edges[i]->to].push_back(i);
  }
  std::vector<bool> removed(n, false);

  auto has_edge = [&](NodeId from, NodeId to) {
    for (std::size_t i : out[from]) {
      if (edges[i]->to == to) return true;
    }
    return false;
  };
  auto erase_slot = [](std::vector<std::size_t>& v, std::size_t slot) { std::erase(v, slot); };

  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeId v = 0; v < n; ++v) {
      if (removed[v] || in[v].size() != 1 || out[v].size() != 1) continue;
      const std::size_t ei = in[v].front();
      const std::size_t eo = out[v].front();
      const NodeId u = edges[ei]->from;
      const NodeId w = edges[eo]->to;
      if (u == w || has_edge(u, w)) continue;

      const QuadBezier first{g.nodes[u].pos, edges[ei]->ctrl, g.nodes[v].pos};
      const QuadBezier second{g.nodes[v].pos, edges[eo]->ctrl, g.nodes[w].pos};
      const Point2 ctrl = merged_control(first, second);

      erase_slot(out[u], ei);
      erase_slot(in[w], eo);
      in[v].clear();
      out[v].clear();
      edges[ei] = Edge{u, w, ctrl};
      edges[eo].reset();
      out[u].push_back(ei);
      in[w].push_back(ei);
      removed[v] = true;
      changed = true;
    }
  }

  LaneGraph result;
  std::vector<NodeId> remap(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    if (removed[v]) continue;
    remap[v] = static_cast<NodeId>(result.nodes.size());
    result.nodes.push_back({remap[v], g.nodes[v].pos, g.nodes[v].label});
  }
  for (const auto& e : edges) {
    if (e) result.edges.push_back({remap[e->from], remap[e->to], e->ctrl});
  }
  return result;
}

LaneGraph split_fixed_length(const LaneGraph& g, double interval) {
  if (!(interval > 0.0)) throw std::invalid_argument("split interval must be positive");
  require_valid(g);

  LaneGraph result;
  result.nodes = g.nodes;
  for (const Edge& e : g.edges) {
    QuadBezier rest = curve_of(g, e);
    const double length = arc_length(rest, kSplitTolerance);
    if (length <= interval) {
      result.edges.push_back(e);
      continue;
    }
    const auto pieces = static_cast<std::size_t>(std::ceil(length / interval));
    const double piece_length = length / static_cast<double>(pieces);
    NodeId prev = e.from;
    for (std::size_t k = 1; k < pieces; ++k) {
      // The remainder still holds pieces - k + 1 equal pieces.
      const double t = t_at_arclength(rest, piece_length, kSplitTolerance);
      const auto [head, tail] = subdivide(rest, t);
      const NodeId cut = result.add_node(head.p2);
      result.edges.push_back({prev, cut, head.p1});
      prev = cut;
      rest = tail;
    }
    result.edges.push_back({prev, e.to, rest.p1});
  }
  return result;
}

LaneGraph resegment(const LaneGraph& g, const ResegConfig& cfg) {
  LaneGraph out = cfg.interval ? split_fixed_length(g, *cfg.interval) : g;
  if (cfg.merge_continuous) out = merge_continuous_nodes(out);
  return out;
}

}  // namespace seqgrow
