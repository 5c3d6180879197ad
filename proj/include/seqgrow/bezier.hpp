#pragma once

#include <span>
#include <utility>
#include <vector>

#include "seqgrow/point.hpp"

namespace seqgrow {

inline constexpr double kDefaultArcTolerance = 1e-4;

// Quadratic Bezier centerline: start, middle control point, end.
struct QuadBezier {
  Point2 p0;
  Point2 p1;
  Point2 p2;

  friend bool operator==(const QuadBezier&, const QuadBezier&) = default;
};

// (1-t)^2 p0 + 2t(1-t) p1 + t^2 p2. Throws std::out_of_range unless 0 <= t <= 1.
Point2 point_at(const QuadBezier& c, double t);

// Adaptive subdivision: splits until |control polygon - chord| <= tol on
// each piece, then sums (2*chord + polygon)/3 per piece.
double arc_length(const QuadBezier& c, double tol = kDefaultArcTolerance);

// Parameter t with |arc_length(0..t) - s| <= tol, by bisection.
// Throws std::out_of_range unless 0 <= s <= arc_length(c).
double t_at_arclength(const QuadBezier& c, double s, double tol = kDefaultArcTolerance);

// Exact de Casteljau split at t. Throws std::out_of_range unless 0 < t < 1.
std::pair<QuadBezier, QuadBezier> subdivide(const QuadBezier& c, double t);

// n >= 2 points at uniform parameter spacing including both endpoints.
std::vector<Point2> sample(const QuadBezier& c, std::size_t n);

// Least-squares middle control point for interior samples of a curve with
// fixed endpoints p0, p2. Samples start from chord-length parameters along
// the polyline p0 -> samples -> p2, which are then refined by projecting each
// sample onto the current curve and re-solving until the control point
// settles. Throws std::invalid_argument when every sample weight 2t(1-t)
// vanishes.
Point2 fit_control_point(std::span<const Point2> samples, Point2 p0, Point2 p2);

// Same fit with caller-supplied parameters t_k in [0,1]; exact for samples
// taken from a quadratic at those parameters.
Point2 fit_control_point(std::span<const Point2> samples, std::span<const double> params, Point2 p0, Point2 p2);

}  // namespace seqgrow
