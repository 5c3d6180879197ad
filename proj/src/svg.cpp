#include "seqgrow/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

namespace seqgrow {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string render_svg(const LaneGraph& g, const SvgStyle& style) {
  double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
  double xmax = -xmin, ymax = -xmin;
  auto grow = [&](Point2 p) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  };
  for (const Node& n : g.nodes) grow(n.pos);
  for (const Edge& e : g.edges) grow(e.ctrl);
  if (g.empty()) xmin = xmax = ymin = ymax = 0.0;
  xmin -= style.margin_m;
  ymin -= style.margin_m;
  xmax += style.margin_m;
  ymax += style.margin_m;

  const double s = style.pixels_per_meter;
  auto px = [&](Point2 p) { return num((p.x - xmin) * s) + "," + num((ymax - p.y) * s); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num((xmax - xmin) * s) << "\" height=\""
     << num((ymax - ymin) * s) << "\">\n";
  os << "  <defs>\n"
        "    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"16\" refY=\"5\" markerWidth=\"6\" "
        "markerHeight=\"6\" orient=\"auto-start-reverse\">\n"
        "      <path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#1f4e79\"/>\n"
        "    </marker>\n"
        "  </defs>\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const Edge& e : g.edges) {
    os << "  <path class=\"edge\" d=\"M " << px(g.nodes[e.from].pos) << " Q " << px(e.ctrl) << " "
       << px(g.nodes[e.to].pos) << "\" fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"2\" "
       << "marker-end=\"url(#arrow)\"/>\n";
  }
  for (const Node& n : g.nodes) {
    const double cx = (n.pos.x - xmin) * s;
    const double cy = (ymax - n.pos.y) * s;
    os << "  <circle class=\"node\" cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\""
       << num(style.node_radius_px) << "\" fill=\"#f4b183\" stroke=\"black\"/>\n";
    os << "  <text x=\"" << num(cx) << "\" y=\"" << num(cy + 3.5) << "\" font-size=\"10\" "
       << "text-anchor=\"middle\" font-family=\"sans-serif\">" << n.id << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace seqgrow
