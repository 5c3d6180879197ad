#pragma once

#include <string>

#include "seqgrow/lane_graph.hpp"

namespace seqgrow {

struct SvgStyle {
  double pixels_per_meter = 8.0;
  double margin_m = 4.0;
  double node_radius_px = 7.0;
};

// Standalone SVG: edges as native quadratic path segments with arrowheads,
// nodes as circles labeled by id. x grows to the right, y upwards.
std::string render_svg(const LaneGraph& g, const SvgStyle& style = {});

}  // namespace seqgrow
