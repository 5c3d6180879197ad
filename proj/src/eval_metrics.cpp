#include "seqgrow/eval_metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "seqgrow/assignment.hpp"
#include "seqgrow/bezier.hpp"
#include "seqgrow/kernels.hpp"
#include "seqgrow/resegmentation.hpp"

namespace seqgrow {

void check_config(const MatchConfig& cfg) {
  if (!(cfg.landmark_threshold > 0.0)) throw std::invalid_argument("landmark threshold must be positive");
  if (cfg.centerline_thresholds.empty()) throw std::invalid_argument("need at least one centerline threshold");
  double prev = 0.0;
  for (double t : cfg.centerline_thresholds) {
    if (!(t > prev)) throw std::invalid_argument("centerline thresholds must be positive and strictly increasing");
    prev = t;
  }
  if (cfg.samples_per_edge < 2) throw std::invalid_argument("need at least two samples per edge");
}

PRF PRF::from(double precision, double recall) {
  const double sum = precision + recall;
  return {precision, recall, sum > 0.0 ? 2.0 * precision * recall / sum : 0.0};
}

PRF prf_from_counts(std::size_t true_positive, std::size_t predicted, std::size_t actual) {
  if (predicted == 0 && actual == 0) return PRF::perfect();
  const double p = predicted > 0 ? static_cast<double>(true_positive) / static_cast<double>(predicted) : 0.0;
  const double r = actual > 0 ? static_cast<double>(true_positive) / static_cast<double>(actual) : 0.0;
  return PRF::from(p, r);
}

NodeMatching match_landmarks(const LaneGraph& pred, const LaneGraph& gt, const MatchConfig& cfg) {
  check_config(cfg);
  CostMatrix m{pred.size(), gt.size(), std::vector<double>(pred.size() * gt.size())};
  for (std::size_t i = 0; i < pred.size(); ++i) {
    for (std::size_t j = 0; j < gt.size(); ++j) {
      m.cost[i * gt.size() + j] = distance(pred.nodes[i].pos, gt.nodes[j].pos);
    }
  }
  const auto assigned = gated_assignment(m, cfg.landmark_threshold);
  NodeMatching out(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (assigned[i]) out[i] = static_cast<NodeId>(*assigned[i]);
  }
  return out;
}

namespace {

std::size_t matched_count(const NodeMatching& m) {
  return static_cast<std::size_t>(std::count_if(m.begin(), m.end(), [](const auto& x) { return x.has_value(); }));
}

PRF reachability_with(const LaneGraph& pred, const LaneGraph& gt, const NodeMatching& match) {
  const AdjacencyMatrix rp = reachability_matrix(pred);
  const AdjacencyMatrix rg = reachability_matrix(gt);
  std::size_t tp = 0, pred_pairs = 0, gt_pairs = 0;
  for (std::size_t i = 0; i < rp.size(); ++i) {
    for (std::size_t j = 0; j < rp.size(); ++j) {
      if (!rp(i, j)) continue;
      ++pred_pairs;
      if (match[i] && match[j] && rg(*match[i], *match[j])) ++tp;
    }
  }
  for (std::uint8_t b : rg.data()) gt_pairs += b;
  return prf_from_counts(tp, pred_pairs, gt_pairs);
}

struct Sampled {
  // samples_per_edge points per edge, edge-major.
  std::vector<Point2> points;
  std::size_t per_edge = 0;

  std::span<const Point2> edge(std::size_t e) const {
    return std::span<const Point2>(points).subspan(e * per_edge, per_edge);
  }
};

Sampled sample_edges(const LaneGraph& g, std::size_t per_edge) {
  Sampled s{{}, per_edge};
  s.points.reserve(g.edges.size() * per_edge);
  for (const Edge& e : g.edges) {
    const auto pts = sample({g.nodes[e.from].pos, e.ctrl, g.nodes[e.to].pos}, per_edge);
    s.points.insert(s.points.end(), pts.begin(), pts.end());
  }
  return s;
}

double mean(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return v.empty() ? 0.0 : sum / static_cast<double>(v.size());
}

double chamfer(std::span<const Point2> a, std::span<const Point2> b) {
  return 0.5 * (mean(kernels::nearest_distances(a, b)) + mean(kernels::nearest_distances(b, a)));
}

// Same driving direction: endpoints pair up start-to-start and end-to-end
// at least as well as crosswise.
bool same_direction(std::span<const Point2> a, std::span<const Point2> b) {
  const double straight = distance(a.front(), b.front()) + distance(a.back(), b.back());
  const double crossed = distance(a.front(), b.back()) + distance(a.back(), b.front());
  return straight <= crossed;
}

double fraction_within(const std::vector<double>& d, double tau) {
  const auto hits = std::count_if(d.begin(), d.end(), [tau](double x) { return x <= tau; });
  return static_cast<double>(hits) / static_cast<double>(d.size());
}

}  // namespace

PRF landmark_prf(const LaneGraph& pred, const LaneGraph& gt, const MatchConfig& cfg) {
  return prf_from_counts(matched_count(match_landmarks(pred, gt, cfg)), pred.size(), gt.size());
}

PRF reachability_prf(const LaneGraph& pred, const LaneGraph& gt, const MatchConfig& cfg) {
  return reachability_with(pred, gt, match_landmarks(pred, gt, cfg));
}

JunctionScore junction_prf(const LaneGraph& pred, const LaneGraph& gt, const MatchConfig& cfg) {
  const LaneGraph p = merge_continuous_nodes(pred);
  const LaneGraph g = merge_continuous_nodes(gt);
  const NodeMatching match = match_landmarks(p, g, cfg);
  return {prf_from_counts(matched_count(match), p.size(), g.size()), reachability_with(p, g, match)};
}

CenterlineEval centerline_prf(const LaneGraph& pred, const LaneGraph& gt, const MatchConfig& cfg) {
  check_config(cfg);
  require_valid(pred);
  require_valid(gt);
  const Sampled sp = sample_edges(pred, cfg.samples_per_edge);
  const Sampled sg = sample_edges(gt, cfg.samples_per_edge);
  const std::size_t ep = pred.edges.size();
  const std::size_t eg = gt.edges.size();

  CenterlineEval out;
  if (ep == 0 && eg == 0) {
    out.centerline = {PRF::perfect(), 1.0};
    out.connectivity = PRF::perfect();
    return out;
  }

  if (ep > 0 && eg > 0) {
    const auto d_pred = kernels::nearest_distances(sp.points, sg.points);
    const auto d_gt = kernels::nearest_distances(sg.points, sp.points);
    double p_sum = 0.0, r_sum = 0.0;
    for (double tau : cfg.centerline_thresholds) {
      p_sum += fraction_within(d_pred, tau);
      r_sum += fraction_within(d_gt, tau);
    }
    const auto k = static_cast<double>(cfg.centerline_thresholds.size());
    out.centerline.mean = PRF::from(p_sum / k, r_sum / k);
  }

  // Edge-level matching.
  const double max_tau = cfg.centerline_thresholds.back();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  CostMatrix m{ep, eg, std::vector<double>(ep * eg, kInf)};
  for (std::size_t a = 0; a < ep; ++a) {
    for (std::size_t b = 0; b < eg; ++b) {
      if (same_direction(sp.edge(a), sg.edge(b))) m.cost[a * eg + b] = chamfer(sp.edge(a), sg.edge(b));
    }
  }
  const auto edge_match = gated_assignment(m, max_tau);
  const std::size_t matched = static_cast<std::size_t>(
      std::count_if(edge_match.begin(), edge_match.end(), [](const auto& x) { return x.has_value(); }));
  out.centerline.detection_ratio = eg > 0 ? static_cast<double>(matched) / static_cast<double>(eg) : 0.0;

  auto successor_pairs = [](const LaneGraph& g) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < g.edges.size(); ++a) {
      for (std::size_t b = 0; b < g.edges.size(); ++b) {
        if (a != b && g.edges[a].to == g.edges[b].from) pairs.emplace_back(a, b);
      }
    }
    return pairs;
  };
  const auto pp = successor_pairs(pred);
  const auto gp = successor_pairs(gt);
  std::size_t tp = 0;
  for (const auto& [a, b] : pp) {
    if (!edge_match[a] || !edge_match[b]) continue;
    if (gt.edges[*edge_match[a]].to == gt.edges[*edge_match[b]].from) ++tp;
  }
  out.connectivity = prf_from_counts(tp, pp.size(), gp.size());
  return out;
}

MetricReport evaluate(const LaneGraph& pred, const LaneGraph& gt, const MatchConfig& cfg) {
  MetricReport r;
  const NodeMatching match = match_landmarks(pred, gt, cfg);
  r.landmark = prf_from_counts(matched_count(match), pred.size(), gt.size());
  r.reachability = reachability_with(pred, gt, match);
  const JunctionScore j = junction_prf(pred, gt, cfg);
  r.junction_landmark = j.landmark;
  r.junction_reachability = j.reachability;
  const CenterlineEval c = centerline_prf(pred, gt, cfg);
  r.centerline = c.centerline;
  r.connectivity = c.connectivity;
  return r;
}

namespace {

std::vector<std::pair<std::string, double>> fields(const MetricReport& r) {
  std::vector<std::pair<std::string, double>> out;
  auto add = [&out](const std::string& name, const PRF& p) {
    out.emplace_back(name + ".precision", p.precision);
    out.emplace_back(name + ".recall", p.recall);
    out.emplace_back(name + ".f1", p.f1);
  };
  add("landmark", r.landmark);
  add("reachability", r.reachability);
  add("junction_landmark", r.junction_landmark);
  add("junction_reachability", r.junction_reachability);
  add("centerline", r.centerline.mean);
  out.emplace_back("centerline.detection_ratio", r.centerline.detection_ratio);
  add("connectivity", r.connectivity);
  return out;
}

}  // namespace

std::string to_key_value(const MetricReport& r) {
  std::string out;
  char buf[64];
  for (const auto& [key, value] : fields(r)) {
    std::snprintf(buf, sizeof buf, "%.6f", value);
    out += key + "=" + buf + "\n";
  }
  return out;
}

std::map<std::string, double> flatten(const MetricReport& r) {
  const auto f = fields(r);
  return {f.begin(), f.end()};
}

}  // namespace seqgrow
