#include "seqgrow/bezier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace seqgrow {
namespace {

constexpr int kMaxSubdivisionDepth = 48;
constexpr int kMaxBisectionSteps = 200;

std::pair<QuadBezier, QuadBezier> split_unchecked(const QuadBezier& c, double t) {
  const Point2 a = c.p0 + t * (c.p1 - c.p0);
  const Point2 b = c.p1 + t * (c.p2 - c.p1);
  const Point2 mid = a + t * (b - a);
  return {QuadBezier{c.p0, a, mid}, QuadBezier{mid, b, c.p2}};
}

double arc_length_rec(const QuadBezier& c, double tol, int depth) {
  const double chord = distance(c.p0, c.p2);
  const double polygon = distance(c.p0, c.p1) + distance(c.p1, c.p2);
  if (polygon - chord <= tol || depth >= kMaxSubdivisionDepth) {
    return (2.0 * chord + polygon) / 3.0;
  }
  const auto [left, right] = split_unchecked(c, 0.5);
  return arc_length_rec(left, 0.5 * tol, depth + 1) + arc_length_rec(right, 0.5 * tol, depth + 1);
}

}  // namespace

Point2 point_at(const QuadBezier& c, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::out_of_range("bezier parameter outside [0,1]: " + std::to_string(t));
  }
  const double u = 1.0 - t;
  return (u * u) * c.p0 + (2.0 * t * u) * c.p1 + (t * t) * c.p2;
}

double arc_length(const QuadBezier& c, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("arc length tolerance must be positive");
  return arc_length_rec(c, tol, 0);
}

double t_at_arclength(const QuadBezier& c, double s, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("arc length tolerance must be positive");
  const double inner_tol = 0.25 * tol;
  const double total = arc_length(c, inner_tol);
  if (!(s >= 0.0) || s > total + tol) {
    throw std::out_of_range("arc length " + std::to_string(s) + " outside [0, " + std::to_string(total) + "]");
  }
  if (s <= 0.0) return 0.0;
  if (s >= total) return 1.0;

  double lo = 0.0;
  double hi = 1.0;
  double t = s / total;
  for (int step = 0; step < kMaxBisectionSteps; ++step) {
    t = 0.5 * (lo + hi);
    const double here = arc_length(split_unchecked(c, t).first, inner_tol);
    if (std::abs(here - s) <= 0.5 * tol) break;
    if (here < s) {
      lo = t;
    } else {
      hi = t;
    }
  }
  return t;
}

std::pair<QuadBezier, QuadBezier> subdivide(const QuadBezier& c, double t) {
  if (!(t > 0.0 && t < 1.0)) {
    throw std::out_of_range("subdivision parameter must lie in (0,1): " + std::to_string(t));
  }
  return split_unchecked(c, t);
}

std::vector<Point2> sample(const QuadBezier& c, std::size_t n) {
  if (n < 2) throw std::invalid_argument("need at least two samples");
  std::vector<Point2> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(point_at(c, static_cast<double>(k) / static_cast<double>(n - 1)));
  }
  return out;
}

Point2 fit_control_point(std::span<const Point2> samples, std::span<const double> params, Point2 p0, Point2 p2) {
  if (params.size() != samples.size()) throw std::invalid_argument("need one parameter per sample");
  Point2 num;
  double den = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double t = params[k];
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("sample parameters must lie in [0,1]");
    const double u = 1.0 - t;
    const double w = 2.0 * t * u;
    num = num + w * (samples[k] - (u * u) * p0 - (t * t) * p2);
    den += w * w;
  }
  if (!(den > 0.0)) {
    throw std::invalid_argument("control point fit needs at least one interior sample");
  }
  return num / den;
}

namespace {

// Parameter of the point on c closest to q: coarse global search, then
// Newton polish.
double project(const QuadBezier& c, Point2 q) {
  double t = 0.0;
  double best = squared_distance(c.p0, q);
  for (int j = 1; j <= 64; ++j) {
    const double tj = j / 64.0;
    const double d = squared_distance(point_at(c, tj), q);
    if (d < best) {
      best = d;
      t = tj;
    }
  }
  const Point2 d2 = 2.0 * (c.p0 - 2.0 * c.p1 + c.p2);
  for (int step = 0; step < 8; ++step) {
    const Point2 r = point_at(c, t) - q;
    const Point2 d1 = 2.0 * ((1.0 - t) * (c.p1 - c.p0) + t * (c.p2 - c.p1));
    const double h = dot(d1, d1) + dot(r, d2);
    if (!(h > 0.0)) break;
    const double next = std::clamp(t - dot(r, d1) / h, 0.0, 1.0);
    if (squared_distance(point_at(c, next), q) > squared_distance(point_at(c, t), q)) break;
    t = next;
  }
  return t;
}

double orthogonal_cost(std::span<const Point2> samples, const QuadBezier& c, std::vector<double>& params) {
  double cost = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    params[k] = project(c, samples[k]);
    cost += squared_distance(point_at(c, params[k]), samples[k]);
  }
  return cost;
}

}  // namespace

Point2 fit_control_point(std::span<const Point2> samples, Point2 p0, Point2 p2) {
  // Chord-length parameters along p0, samples..., p2 to start.
  std::vector<double> cum(samples.size() + 2, 0.0);
  Point2 prev = p0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    cum[k + 1] = cum[k] + distance(prev, samples[k]);
    prev = samples[k];
  }
  cum.back() = cum[samples.size()] + distance(prev, p2);
  const double total = cum.back();
  std::vector<double> params(samples.size(), 0.0);
  for (std::size_t k = 0; k < samples.size(); ++k) params[k] = total > 0.0 ? cum[k + 1] / total : 0.0;
  Point2 p1 = fit_control_point(samples, params, p0, p2);

  // Gauss-Newton on orthogonal distances: each residual is measured along
  // the curve normal at the sample's projection, whose derivative in p1 is
  // 2t(1-t) times that normal.
  const double scale = std::max(1.0, total);
  double cost = orthogonal_cost(samples, {p0, p1, p2}, params);
  for (int iter = 0; iter < 100 && cost > 0.0; ++iter) {
    double a = 0.0, b = 0.0, d = 0.0;
    Point2 g;
    for (std::size_t k = 0; k < samples.size(); ++k) {
      const double t = params[k];
      const Point2 tangent = 2.0 * ((1.0 - t) * (p1 - p0) + t * (p2 - p1));
      const double len = norm(tangent);
      if (!(len > 0.0)) continue;
      const Point2 n{-tangent.y / len, tangent.x / len};
      const double w = 2.0 * t * (1.0 - t);
      const double e = dot(n, point_at({p0, p1, p2}, t) - samples[k]);
      a += w * w * n.x * n.x;
      b += w * w * n.x * n.y;
      d += w * w * n.y * n.y;
      g = g + (w * e) * n;
    }
    const double damping = 1e-12 * (a + d) + 1e-300;
    a += damping;
    d += damping;
    const double det = a * d - b * b;
    if (!(det > 0.0)) break;
    Point2 step{-(d * g.x - b * g.y) / det, -(a * g.y - b * g.x) / det};
    bool improved = false;
    std::vector<double> trial(params.size());
    for (int halving = 0; halving < 30; ++halving) {
      const Point2 candidate = p1 + step;
      const double c = orthogonal_cost(samples, {p0, candidate, p2}, trial);
      if (c < cost) {
        p1 = candidate;
        cost = c;
        params.swap(trial);
        improved = true;
        break;
      }
      step = 0.5 * step;
    }
    if (!improved || norm(step) <= 1e-13 * scale) break;
  }
  return p1;
}

}  // namespace seqgrow
