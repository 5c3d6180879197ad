#pragma once

// Oracles and corpora shared by the unit and acceptance tests. Everything here
// is written against the public data types only, without calling the library
// routine it checks.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "seqgrow/lane_graph.hpp"
#include "seqgrow/resegmentation.hpp"
#include "seqgrow/rng.hpp"
#include "seqgrow/synth.hpp"

namespace seqgrow::testing {

using BoolMatrix = std::vector<std::vector<bool>>;

inline BoolMatrix adjacency_of(const LaneGraph& g) {
  BoolMatrix a(g.size(), std::vector<bool>(g.size(), false));
  for (const Edge& e : g.edges) a[e.from][e.to] = true;
  return a;
}

// R = A + A^2 + ... by repeated boolean products until nothing changes.
inline BoolMatrix closure_by_powers(const BoolMatrix& a) {
  const std::size_t n = a.size();
  BoolMatrix reach = a;
  BoolMatrix power = a;
  while (true) {
    BoolMatrix next(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!power[i][k]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (a[k][j]) next[i][j] = true;
        }
      }
    }
    bool grew = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (next[i][j] && !reach[i][j]) {
          reach[i][j] = true;
          grew = true;
        }
      }
    }
    if (!grew) break;
    power = std::move(next);
  }
  for (std::size_t i = 0; i < n; ++i) reach[i][i] = false;
  return reach;
}

inline std::vector<NodePair> brute_reachable_pairs(const LaneGraph& g) {
  const BoolMatrix r = closure_by_powers(adjacency_of(g));
  std::vector<NodePair> out;
  for (NodeId i = 0; i < g.size(); ++i) {
    for (NodeId j = 0; j < g.size(); ++j) {
      if (r[i][j]) out.emplace_back(i, j);
    }
  }
  return out;
}

// Exhaustive gated matching: every injective assignment of the smaller side,
// pairs farther than threshold left unmatched; most pairs first, then least
// summed distance. Entry i is the gt node of pred node i.
inline std::vector<std::optional<NodeId>> brute_matching(const LaneGraph& pred, const LaneGraph& gt,
                                                         double threshold) {
  const bool flip = pred.size() > gt.size();
  const LaneGraph& small = flip ? gt : pred;
  const LaneGraph& large = flip ? pred : gt;
  std::vector<std::size_t> perm(large.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best_count = 0;
  double best_cost = 0.0;
  std::vector<std::optional<std::size_t>> best(small.size());
  do {
    std::size_t count = 0;
    double cost = 0.0;
    std::vector<std::optional<std::size_t>> cur(small.size());
    for (std::size_t i = 0; i < small.size(); ++i) {
      const double d = distance(small.nodes[i].pos, large.nodes[perm[i]].pos);
      if (d <= threshold) {
        ++count;
        cost += d;
        cur[i] = perm[i];
      }
    }
    if (count > best_count || (count == best_count && count > 0 && cost < best_cost - 1e-12)) {
      best_count = count;
      best_cost = cost;
      best = cur;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<std::optional<NodeId>> out(pred.size());
  for (std::size_t i = 0; i < small.size(); ++i) {
    if (!best[i]) continue;
    if (flip) {
      out[*best[i]] = static_cast<NodeId>(i);
    } else {
      out[i] = static_cast<NodeId>(*best[i]);
    }
  }
  return out;
}

struct BrutePrf {
  double precision = 0.0;
  double recall = 0.0;
};

inline BrutePrf brute_ratio(std::size_t tp, std::size_t predicted, std::size_t actual) {
  if (predicted == 0 && actual == 0) return {1.0, 1.0};
  return {predicted ? static_cast<double>(tp) / static_cast<double>(predicted) : 0.0,
          actual ? static_cast<double>(tp) / static_cast<double>(actual) : 0.0};
}

// Enumerates every ordered node pair of both graphs against the closure
// oracle.
inline BrutePrf brute_reachability_prf(const LaneGraph& pred, const LaneGraph& gt, double threshold) {
  const auto match = brute_matching(pred, gt, threshold);
  const BoolMatrix rp = closure_by_powers(adjacency_of(pred));
  const BoolMatrix rg = closure_by_powers(adjacency_of(gt));
  std::size_t tp = 0, fp = 0, fn = 0;
  std::set<std::pair<NodeId, NodeId>> hit;
  for (NodeId i = 0; i < pred.size(); ++i) {
    for (NodeId j = 0; j < pred.size(); ++j) {
      if (!rp[i][j]) continue;
      if (match[i] && match[j] && rg[*match[i]][*match[j]]) {
        ++tp;
        hit.insert({*match[i], *match[j]});
      } else {
        ++fp;
      }
    }
  }
  for (NodeId i = 0; i < gt.size(); ++i) {
    for (NodeId j = 0; j < gt.size(); ++j) {
      if (rg[i][j] && !hit.contains({i, j})) ++fn;
    }
  }
  return brute_ratio(tp, tp + fp, tp + fn);
}

inline bool is_permutation_of_nodes(const std::vector<NodeId>& order, std::size_t n) {
  if (order.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (NodeId id : order) {
    if (id >= n || seen[id]) return false;
    seen[id] = true;
  }
  return true;
}

// Compares a decoded graph (node r = rank r+1) with the original under the
// visit order. Returns a description of the first mismatch, or empty.
inline std::string roundtrip_mismatch(const LaneGraph& g, const std::vector<NodeId>& order, const LaneGraph& back,
                                      double tol) {
  if (back.size() != g.size()) {
    return "node count " + std::to_string(back.size()) + " != " + std::to_string(g.size());
  }
  for (std::size_t r = 0; r < order.size(); ++r) {
    const Point2 a = g.nodes[order[r]].pos;
    const Point2 b = back.nodes[r].pos;
    if (std::abs(a.x - b.x) > tol || std::abs(a.y - b.y) > tol) {
      return "node " + std::to_string(order[r]) + " moved by (" + std::to_string(b.x - a.x) + ", " +
             std::to_string(b.y - a.y) + ")";
    }
  }
  std::multiset<std::pair<NodeId, NodeId>> want, got;
  for (const Edge& e : g.edges) want.insert({e.from, e.to});
  for (const Edge& e : back.edges) got.insert({order[e.from], order[e.to]});
  if (want != got) return "edge sets differ";
  return {};
}

inline bool has_cycle(const LaneGraph& g) {
  const BoolMatrix r = closure_by_powers(adjacency_of(g));
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (r[i][j] && r[j][i]) return true;
    }
  }
  return false;
}

inline bool has_antiparallel(const LaneGraph& g) {
  std::set<std::pair<NodeId, NodeId>> s;
  for (const Edge& e : g.edges) s.insert({e.from, e.to});
  return std::any_of(g.edges.begin(), g.edges.end(), [&](const Edge& e) { return s.contains({e.to, e.from}); });
}

// Random simple digraph on n nodes with positions spread over the BEV box.
inline LaneGraph random_graph(Rng& rng, std::size_t n, double p_edge) {
  LaneGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_node({rng.uniform(-40.0, 40.0), rng.uniform(-25.0, 25.0)});
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = 0; b < n; ++b) {
      if (a != b && rng.bernoulli(p_edge)) g.add_straight_edge(a, b);
    }
  }
  return g;
}

// Seeded synthetic corpus for codec properties: node counts 1..150, with
// loop and bidirectional draws mixed in.
inline std::vector<LaneGraph> synthetic_corpus(std::size_t count, std::uint64_t base_seed) {
  std::vector<LaneGraph> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    SynthParams p;
    p.seed = corpus_seed(base_seed, i);
    p.node_budget = 1 + (i * 37) % token::kMaxNodes;
    if (i % 150 == 149) p.node_budget = token::kMaxNodes;
    p.grid_pitch = p.node_budget > 40 ? 6.0 : (p.node_budget > 12 ? 10.0 : 16.0);
    p.jitter = p.grid_pitch / 4.0;
    p.p_loop = (i % 3 == 0) ? 1.0 : 0.3;
    if (p.node_budget < 4) p.p_loop = 0.0;
    p.p_bidirectional = (i % 3 == 1) ? (p.node_budget >= 2 ? 1.0 : 0.0) : 0.1;
    p.p_fork = 0.3;
    p.p_merge = 0.3;
    out.push_back(generate(p));
  }
  return out;
}

inline std::vector<int> in_degrees(const LaneGraph& g) {
  std::vector<int> d(g.size(), 0);
  for (const Edge& e : g.edges) ++d[e.to];
  return d;
}

inline std::vector<int> out_degrees(const LaneGraph& g) {
  std::vector<int> d(g.size(), 0);
  for (const Edge& e : g.edges) ++d[e.from];
  return d;
}

// No node has exactly one incoming and one outgoing edge, so every node is a
// junction, a source, a sink or isolated.
inline bool junction_only(const LaneGraph& g) {
  const auto in = in_degrees(g);
  const auto out = out_degrees(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (in[i] == 1 && out[i] == 1) return false;
  }
  return true;
}

// Generated graphs with continuous nodes merged away, keeping only those
// that end up junction-only with at least two nodes.
inline std::vector<LaneGraph> junction_only_corpus(std::size_t count, std::uint64_t base_seed) {
  std::vector<LaneGraph> out;
  for (std::uint64_t i = 0; out.size() < count; ++i) {
    SynthParams p;
    p.seed = corpus_seed(base_seed, i);
    p.node_budget = 4 + i % 12;
    p.grid_pitch = 24.0;
    p.jitter = 3.0;
    p.p_fork = 0.5;
    p.p_merge = 0.5;
    p.p_loop = 0.2;
    p.p_bidirectional = 0.15;
    LaneGraph g = merge_continuous_nodes(generate(p));
    if (g.size() >= 2 && junction_only(g)) out.push_back(std::move(g));
  }
  return out;
}

// Dense polyline sampling of an edge, uniform in t.
inline std::vector<Point2> dense_edge(const LaneGraph& g, const Edge& e, std::size_t n = 400) {
  std::vector<Point2> pts;
  const Point2 p0 = g.nodes[e.from].pos;
  const Point2 p2 = g.nodes[e.to].pos;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n - 1);
    pts.push_back((1 - t) * (1 - t) * p0 + 2 * t * (1 - t) * e.ctrl + t * t * p2);
  }
  return pts;
}

// Symmetric mean nearest-neighbor distance between two point sets.
inline double chamfer(const std::vector<Point2>& a, const std::vector<Point2>& b) {
  auto one_way = [](const std::vector<Point2>& from, const std::vector<Point2>& to) {
    double sum = 0.0;
    for (const Point2& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const Point2& q : to) best = std::min(best, distance(p, q));
      sum += best;
    }
    return sum / static_cast<double>(from.size());
  };
  return 0.5 * (one_way(a, b) + one_way(b, a));
}

}  // namespace seqgrow::testing
