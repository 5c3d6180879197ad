#pragma once

// Seeded synthetic lane graphs for property tests and toy training corpora.
//
// Skeleton: a jittered waypoint grid over the BEV box. A connected region of
// grid cells is grown one cell at a time from a random seed cell (or from a
// 2x2 block carrying a directed 4-cycle when a loop is drawn); each growth
// step adds a randomly oriented corridor to an already included neighbor.
// Fork and merge augmentations add extra corridors between grid neighbors,
// oriented along a topological order unless the graph already has a loop, so
// loop-free draws stay acyclic. Bidirectional augmentation adds reverse
// edges sharing the forward edge's geometry.
//
// RNG: std::mt19937_64 seeded with SplitMix64(seed); uniform reals take the
// top 53 bits and integer draws use modulo, so corpora replay identically on
// every conforming standard library.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "seqgrow/lane_graph.hpp"
#include "seqgrow/quantizer.hpp"

namespace seqgrow {

struct SynthParams {
  std::uint64_t seed = 0;
  std::size_t node_budget = 24;
  double grid_pitch = 16.0;
  double p_fork = 0.2;
  double p_merge = 0.2;
  double p_loop = 0.0;
  double p_bidirectional = 0.0;
  // Per-axis uniform node jitter, meters; must stay below grid_pitch / 2.
  double jitter = 2.0;
  // Control point offset from the chord midpoint, as a fraction of chord
  // length, drawn uniformly from [-bend, bend].
  double bend = 0.2;
  AxisRange bev_x_range{-48.0, 48.0};
  AxisRange bev_y_range{-30.0, 30.0};
};

// Throws std::invalid_argument for malformed params and seqgrow::Error for
// unsatisfiable ones (p_loop = 1 without room for a 2x2 block, or
// p_bidirectional = 1 with fewer than two nodes).
void check_params(const SynthParams& p);

LaneGraph generate(const SynthParams& params);

// Seed for the i-th graph of a corpus rooted at base_seed.
std::uint64_t corpus_seed(std::uint64_t base_seed, std::uint64_t index);

struct BevGrid {
  std::size_t width = 0;   // cells along x
  std::size_t height = 0;  // cells along y
  double resolution = 0.0;
  AxisRange x_range;
  AxisRange y_range;
  // Row-major, row = y bin, column = x bin; 1 where a centerline passes.
  std::vector<float> cells;

  float at(std::size_t col, std::size_t row) const { return cells[row * width + col]; }
  std::size_t occupied() const;
};

// Marks every cell the centerline passes through. Grid-line crossings of
// each quadratic are solved in closed form, so a curve that only clips a
// cell corner still marks it.
BevGrid rasterize(const LaneGraph& g, double resolution, AxisRange x_range = {-48.0, 48.0},
                  AxisRange y_range = {-30.0, 30.0});

// Binary PGM (P5), one byte per cell, first row = lowest y.
void write_pgm(std::ostream& os, const BevGrid& grid);

}  // namespace seqgrow
