#include "seqgrow/synth.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include "seqgrow/bezier.hpp"
#include "seqgrow/error.hpp"
#include "seqgrow/rng.hpp"

namespace seqgrow {
namespace {

constexpr double kGridMargin = 1.0;

struct Grid {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double x0 = 0.0;
  double y0 = 0.0;
  double pitch = 0.0;

  std::size_t cells() const { return nx * ny; }
};

std::size_t axis_cells(const AxisRange& r, double pitch) {
  const double usable = r.span() - 2.0 * kGridMargin;
  if (usable < 0.0) return 1;
  return static_cast<std::size_t>(std::floor(usable / pitch)) + 1;
}

Grid make_grid(const SynthParams& p) {
  Grid g;
  g.pitch = p.grid_pitch;
  g.nx = axis_cells(p.bev_x_range, p.grid_pitch);
  g.ny = axis_cells(p.bev_y_range, p.grid_pitch);
  const double cx = 0.5 * (p.bev_x_range.min + p.bev_x_range.max);
  const double cy = 0.5 * (p.bev_y_range.min + p.bev_y_range.max);
  g.x0 = cx - 0.5 * static_cast<double>(g.nx - 1) * p.grid_pitch;
  g.y0 = cy - 0.5 * static_cast<double>(g.ny - 1) * p.grid_pitch;
  return g;
}

using Cell = std::pair<std::size_t, std::size_t>;  // (ix, iy)

std::vector<Cell> grid_neighbors(const Grid& g, Cell c) {
  std::vector<Cell> out;
  const auto [ix, iy] = c;
  if (ix > 0) out.push_back({ix - 1, iy});
  if (ix + 1 < g.nx) out.push_back({ix + 1, iy});
  if (iy > 0) out.push_back({ix, iy - 1});
  if (iy + 1 < g.ny) out.push_back({ix, iy + 1});
  return out;
}

Point2 clamp_to(Point2 p, const AxisRange& xr, const AxisRange& yr) {
  return {std::clamp(p.x, xr.min, xr.max), std::clamp(p.y, yr.min, yr.max)};
}

// Topological rank of every node; only called on acyclic graphs.
std::vector<std::size_t> topo_rank(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
  std::vector<std::vector<NodeId>> succ(n);
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& [a, b] : edges) {
    succ[a].push_back(b);
    ++indeg[b];
  }
  std::set<NodeId> ready;
  for (NodeId i = 0; i < n; ++i) {
    if (indeg[i] == 0) ready.insert(i);
  }
  std::vector<std::size_t> rank(n, 0);
  std::size_t next = 0;
  while (!ready.empty()) {
    const NodeId v = *ready.begin();
    ready.erase(ready.begin());
    rank[v] = next++;
    for (NodeId w : succ[v]) {
      if (--indeg[w] == 0) ready.insert(w);
    }
  }
  return rank;
}

bool loop_fits(const Grid& grid, const SynthParams& p) {
  return p.node_budget >= 4 && grid.nx >= 2 && grid.ny >= 2;
}

}  // namespace

void check_params(const SynthParams& p) {
  for (double prob : {p.p_fork, p.p_merge, p.p_loop, p.p_bidirectional}) {
    if (!(prob >= 0.0 && prob <= 1.0)) throw std::invalid_argument("probabilities must lie in [0,1]");
  }
  if (p.node_budget < 1) throw std::invalid_argument("node_budget must be at least 1");
  if (p.node_budget > token::kMaxNodes) throw std::invalid_argument("node_budget exceeds the encodable node count");
  if (!(p.grid_pitch > 0.0)) throw std::invalid_argument("grid_pitch must be positive");
  if (!(p.jitter >= 0.0 && p.jitter < 0.5 * p.grid_pitch)) {
    throw std::invalid_argument("jitter must lie in [0, grid_pitch / 2)");
  }
  if (!(p.bend >= 0.0)) throw std::invalid_argument("bend must be non-negative");
  if (!(p.bev_x_range.span() > 0.0 && p.bev_y_range.span() > 0.0)) {
    throw std::invalid_argument("BEV ranges must have positive span");
  }
  const Grid grid = make_grid(p);
  if (p.p_loop >= 1.0 && !loop_fits(grid, p)) {
    throw Error("p_loop = 1 needs node_budget >= 4 and a grid of at least 2x2 cells");
  }
  if (p.p_bidirectional >= 1.0 && (p.node_budget < 2 || grid.cells() < 2)) {
    throw Error("p_bidirectional = 1 needs at least two nodes");
  }
}

std::uint64_t corpus_seed(std::uint64_t base_seed, std::uint64_t index) { return stream_seed(base_seed, index); }

LaneGraph generate(const SynthParams& params) {
  check_params(params);
  Rng rng(params.seed);
  const Grid grid = make_grid(params);
  const std::size_t target = std::min(params.node_budget, grid.cells());
  const bool loop = rng.bernoulli(params.p_loop) && loop_fits(grid, params) && target >= 4;

  std::map<Cell, NodeId> node_of;
  std::vector<Cell> cells;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::set<std::pair<NodeId, NodeId>> linked;  // unordered, stored (min,max)

  auto include = [&](Cell c) {
    const auto id = static_cast<NodeId>(cells.size());
    cells.push_back(c);
    node_of.emplace(c, id);
    return id;
  };
  auto connect = [&](NodeId a, NodeId b) {
    edges.emplace_back(a, b);
    linked.insert({std::min(a, b), std::max(a, b)});
  };
  auto is_linked = [&](NodeId a, NodeId b) { return linked.contains({std::min(a, b), std::max(a, b)}); };

  if (loop) {
    const std::size_t ix = rng.index(grid.nx - 1);
    const std::size_t iy = rng.index(grid.ny - 1);
    std::vector<NodeId> ring{include({ix, iy}), include({ix + 1, iy}), include({ix + 1, iy + 1}),
                             include({ix, iy + 1})};
    if (rng.bernoulli(0.5)) std::reverse(ring.begin(), ring.end());
    for (std::size_t k = 0; k < 4; ++k) connect(ring[k], ring[(k + 1) % 4]);
  } else {
    include({rng.index(grid.nx), rng.index(grid.ny)});
  }

  while (cells.size() < target) {
    std::vector<std::pair<NodeId, Cell>> frontier;
    for (NodeId v = 0; v < cells.size(); ++v) {
      for (Cell c : grid_neighbors(grid, cells[v])) {
        if (!node_of.contains(c)) frontier.emplace_back(v, c);
      }
    }
    const auto [parent, cell] = frontier[rng.index(frontier.size())];
    const NodeId child = include(cell);
    if (rng.bernoulli(0.5)) {
      connect(parent, child);
    } else {
      connect(child, parent);
    }
  }

  const std::size_t n = cells.size();
  std::vector<std::size_t> topo = loop ? std::vector<std::size_t>{} : topo_rank(n, edges);
  auto forward_ok = [&](NodeId a, NodeId b) { return loop || topo[a] < topo[b]; };

  for (NodeId v = 0; v < n; ++v) {
    std::vector<NodeId> open;
    for (Cell c : grid_neighbors(grid, cells[v])) {
      const auto it = node_of.find(c);
      if (it != node_of.end() && !is_linked(v, it->second)) open.push_back(it->second);
    }
    if (rng.bernoulli(params.p_fork)) {
      std::vector<NodeId> cand;
      std::copy_if(open.begin(), open.end(), std::back_inserter(cand), [&](NodeId w) { return forward_ok(v, w); });
      if (!cand.empty()) {
        const NodeId w = cand[rng.index(cand.size())];
        connect(v, w);
        std::erase(open, w);
      }
    }
    if (rng.bernoulli(params.p_merge)) {
      std::vector<NodeId> cand;
      std::copy_if(open.begin(), open.end(), std::back_inserter(cand), [&](NodeId w) { return forward_ok(w, v); });
      if (!cand.empty()) connect(cand[rng.index(cand.size())], v);
    }
  }

  LaneGraph g;
  for (const Cell& c : cells) {
    const Point2 base{grid.x0 + static_cast<double>(c.first) * grid.pitch,
                      grid.y0 + static_cast<double>(c.second) * grid.pitch};
    const Point2 jit{rng.uniform(-params.jitter, params.jitter), rng.uniform(-params.jitter, params.jitter)};
    g.add_node(clamp_to(base + jit, params.bev_x_range, params.bev_y_range));
  }
  const std::size_t forward_edges = edges.size();
  for (std::size_t i = 0; i < forward_edges; ++i) {
    const auto [a, b] = edges[i];
    const Point2 pa = g.nodes[a].pos;
    const Point2 pb = g.nodes[b].pos;
    const Point2 chord = pb - pa;
    const Point2 normal{-chord.y, chord.x};
    const Point2 ctrl = 0.5 * (pa + pb) + rng.uniform(-params.bend, params.bend) * normal;
    g.add_edge(a, b, clamp_to(ctrl, params.bev_x_range, params.bev_y_range));
  }
  for (std::size_t i = 0; i < forward_edges; ++i) {
    if (rng.bernoulli(params.p_bidirectional)) {
      const Edge e = g.edges[i];
      g.add_edge(e.to, e.from, e.ctrl);
    }
  }
  return g;
}

std::size_t BevGrid::occupied() const {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](float c) { return c > 0.0f; }));
}

BevGrid rasterize(const LaneGraph& g, double resolution, AxisRange x_range, AxisRange y_range) {
  if (!(resolution > 0.0)) throw std::invalid_argument("raster resolution must be positive");
  require_valid(g);
  BevGrid grid;
  grid.resolution = resolution;
  grid.x_range = x_range;
  grid.y_range = y_range;
  grid.width = static_cast<std::size_t>(std::llround(x_range.span() / resolution));
  grid.height = static_cast<std::size_t>(std::llround(y_range.span() / resolution));
  grid.cells.assign(grid.width * grid.height, 0.0f);

  for (const Edge& e : g.edges) {
    const QuadBezier c{g.nodes[e.from].pos, e.ctrl, g.nodes[e.to].pos};
    // Every parameter where the curve crosses a grid line; between two
    // consecutive crossings it stays inside one cell.
    std::vector<double> cuts{0.0, 1.0};
    auto add_crossings = [&cuts, resolution](double p0, double p1, double p2, double origin) {
      const double a = p0 - 2.0 * p1 + p2;
      const double b = 2.0 * (p1 - p0);
      double lo = std::min(p0, p2), hi = std::max(p0, p2);
      if (a != 0.0) {
        const double t = -b / (2.0 * a);
        if (t > 0.0 && t < 1.0) {
          const double v = (a * t + b) * t + p0;
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
      const auto first = static_cast<long>(std::ceil((lo - origin) / resolution));
      const auto last = static_cast<long>(std::floor((hi - origin) / resolution));
      for (long k = first; k <= last; ++k) {
        const double cc = p0 - (origin + static_cast<double>(k) * resolution);
        if (std::abs(a) < 1e-12 * (std::abs(b) + 1.0)) {
          if (b != 0.0) cuts.push_back(-cc / b);
          continue;
        }
        const double disc = b * b - 4.0 * a * cc;
        if (disc < 0.0) continue;
        const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
        cuts.push_back(q / a);
        if (q != 0.0) cuts.push_back(cc / q);
      }
    };
    add_crossings(c.p0.x, c.p1.x, c.p2.x, x_range.min);
    add_crossings(c.p0.y, c.p1.y, c.p2.y, y_range.min);
    std::erase_if(cuts, [](double t) { return !(t >= 0.0 && t <= 1.0); });
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      if (!(cuts[k + 1] > cuts[k])) continue;
      const Point2 p = point_at(c, 0.5 * (cuts[k] + cuts[k + 1]));
      const double fx = std::floor((p.x - x_range.min) / resolution);
      const double fy = std::floor((p.y - y_range.min) / resolution);
      if (fx < 0.0 || fy < 0.0) continue;
      const auto col = static_cast<std::size_t>(fx);
      const auto row = static_cast<std::size_t>(fy);
      if (col < grid.width && row < grid.height) grid.cells[row * grid.width + col] = 1.0f;
    }
  }
  return grid;
}

void write_pgm(std::ostream& os, const BevGrid& grid) {
  os << "P5\n" << grid.width << ' ' << grid.height << "\n255\n";
  for (float c : grid.cells) {
    const auto byte = static_cast<unsigned char>(std::lround(std::clamp(c, 0.0f, 1.0f) * 255.0f));
    os.put(static_cast<char>(byte));
  }
}

}  // namespace seqgrow
