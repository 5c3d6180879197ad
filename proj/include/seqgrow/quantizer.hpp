#pragma once

#include <cstdint>
#include <utility>

#include "seqgrow/point.hpp"

namespace seqgrow {

// The 576-symbol vocabulary.
namespace token {

using Value = std::int32_t;

inline constexpr Value kCoordBins = 200;        // 0..199 node coordinate bins
inline constexpr Value kIndexBase = 200;        // 200..349 node ranks
inline constexpr Value kBezierBase = 350;       // 350..569 control point bins
inline constexpr Value kBezierBins = 220;
inline constexpr Value kReserved = 570;
inline constexpr Value kTo = 571;
inline constexpr Value kSep = 572;
inline constexpr Value kEos = 573;
inline constexpr Value kBos = 574;
inline constexpr Value kPad = 575;
inline constexpr Value kVocabSize = 576;

// Highest rank an index token can carry; a graph may hold one more node than
// this because the last-ranked node is never referenced.
inline constexpr Value kMaxReferencedRank = kBezierBase - kIndexBase - 1;
inline constexpr std::size_t kMaxNodes = static_cast<std::size_t>(kMaxReferencedRank) + 1;

enum class Class { kCoord, kIndex, kBezier, kReserved, kTo, kSep, kEos, kBos, kPad, kInvalid };

constexpr Class classify(Value v) {
  if (v < 0 || v >= kVocabSize) return Class::kInvalid;
  if (v < kIndexBase) return Class::kCoord;
  if (v < kBezierBase) return Class::kIndex;
  if (v < kReserved) return Class::kBezier;
  switch (v) {
    case kReserved: return Class::kReserved;
    case kTo: return Class::kTo;
    case kSep: return Class::kSep;
    case kEos: return Class::kEos;
    case kBos: return Class::kBos;
    default: return Class::kPad;
  }
}

const char* to_string(Class c);

// Cross-entropy weight for a target token: node coordinate tokens carry
// coord_weight, everything else 1.
constexpr double loss_weight(Value v, double coord_weight = 2.0) {
  return classify(v) == Class::kCoord ? coord_weight : 1.0;
}

}  // namespace token

struct AxisRange {
  double min = 0.0;
  double max = 0.0;
  double span() const { return max - min; }
};

// Metric <-> bin mapping for both axes; each axis is binned independently
// against its own range with the shared resolution.
struct QuantizerConfig {
  AxisRange x_range{-48.0, 48.0};
  AxisRange y_range{-30.0, 30.0};
  double resolution = 0.5;
  std::int32_t coord_bins = token::kCoordBins;
  std::int32_t index_base = token::kIndexBase;
  std::int32_t bezier_base = token::kBezierBase;
  // Clamp out-of-range control points to the nearest Bezier bin instead of
  // failing.
  bool clamp_ctrl = true;

  static QuantizerConfig nuscenes() { return {}; }
  static QuantizerConfig argoverse2() {
    QuantizerConfig c;
    c.x_range = {-30.0, 30.0};
    c.y_range = {-15.0, 15.0};
    return c;
  }
};

// Throws std::invalid_argument when the ranges overflow coord_bins, the
// resolution is not positive, or the token bases differ from the vocabulary.
void check_config(const QuantizerConfig& cfg);

struct Bins {
  std::int32_t x = 0;
  std::int32_t y = 0;
  friend bool operator==(Bins, Bins) = default;
};

enum class RangeMode { kStrict, kClamp };

// bin = floor((coord - min) / resolution), clamped to [0, coord_bins-1].
// Strict mode throws EncodeError for a coordinate outside [min, max].
Bins quantize(Point2 pos, const QuantizerConfig& cfg, RangeMode mode = RangeMode::kStrict);
// Bin centers: min + (bin + 0.5) * resolution.
Point2 dequantize(Bins b, const QuantizerConfig& cfg);

// Control points use kBezierBins bins per axis starting at the range minimum.
// Out-of-range values clamp when cfg.clamp_ctrl, else throw EncodeError.
Bins quantize_ctrl(Point2 ctrl, const QuantizerConfig& cfg);
Point2 dequantize_ctrl(Bins b, const QuantizerConfig& cfg);

}  // namespace seqgrow
