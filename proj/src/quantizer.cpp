#include "seqgrow/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "seqgrow/error.hpp"

namespace seqgrow {

const char* token::to_string(Class c) {
  switch (c) {
    case Class::kCoord: return "coord";
    case Class::kIndex: return "index";
    case Class::kBezier: return "bezier";
    case Class::kReserved: return "reserved";
    case Class::kTo: return "TO";
    case Class::kSep: return "SEP";
    case Class::kEos: return "EOS";
    case Class::kBos: return "BOS";
    case Class::kPad: return "PAD";
    case Class::kInvalid: return "invalid";
  }
  return "invalid";
}

namespace {

// Small slack so that spans like 96 / 0.5 are not rejected on rounding.
constexpr double kBinSlack = 1e-9;

std::int32_t bin_of(double coord, const AxisRange& r, double res) {
  return static_cast<std::int32_t>(std::floor((coord - r.min) / res));
}

std::int32_t axis_bin(double coord, const AxisRange& r, const QuantizerConfig& cfg, RangeMode mode,
                      const char* axis) {
  if (!std::isfinite(coord)) {
    throw EncodeError(std::string("non-finite ") + axis + " coordinate");
  }
  if (mode == RangeMode::kStrict && (coord < r.min || coord > r.max)) {
    throw EncodeError(std::string(axis) + " coordinate " + std::to_string(coord) + " outside [" +
                      std::to_string(r.min) + ", " + std::to_string(r.max) + "]");
  }
  return std::clamp(bin_of(coord, r, cfg.resolution), 0, cfg.coord_bins - 1);
}

std::int32_t ctrl_bin(double coord, const AxisRange& r, const QuantizerConfig& cfg, const char* axis) {
  if (!std::isfinite(coord)) {
    throw EncodeError(std::string("non-finite control ") + axis + " coordinate");
  }
  const double raw = std::floor((coord - r.min) / cfg.resolution);
  if (raw < 0.0 || raw > token::kBezierBins - 1) {
    if (!cfg.clamp_ctrl) {
      throw EncodeError(std::string("control ") + axis + " coordinate " + std::to_string(coord) +
                        " outside the Bezier token range");
    }
    return raw < 0.0 ? 0 : token::kBezierBins - 1;
  }
  return static_cast<std::int32_t>(raw);
}

}  // namespace

void check_config(const QuantizerConfig& cfg) {
  if (!(cfg.resolution > 0.0)) throw std::invalid_argument("resolution must be positive");
  if (cfg.coord_bins != token::kCoordBins || cfg.index_base != token::kIndexBase ||
      cfg.bezier_base != token::kBezierBase) {
    throw std::invalid_argument("token layout must match the 576-symbol vocabulary");
  }
  for (const AxisRange* r : {&cfg.x_range, &cfg.y_range}) {
    if (!(r->span() > 0.0)) throw std::invalid_argument("axis range must have positive span");
    if (r->span() / cfg.resolution > cfg.coord_bins + kBinSlack) {
      throw std::invalid_argument("axis span / resolution exceeds the coordinate bin count");
    }
  }
}

Bins quantize(Point2 pos, const QuantizerConfig& cfg, RangeMode mode) {
  return {axis_bin(pos.x, cfg.x_range, cfg, mode, "x"), axis_bin(pos.y, cfg.y_range, cfg, mode, "y")};
}

Point2 dequantize(Bins b, const QuantizerConfig& cfg) {
  return {cfg.x_range.min + (b.x + 0.5) * cfg.resolution, cfg.y_range.min + (b.y + 0.5) * cfg.resolution};
}

Bins quantize_ctrl(Point2 ctrl, const QuantizerConfig& cfg) {
  return {ctrl_bin(ctrl.x, cfg.x_range, cfg, "x"), ctrl_bin(ctrl.y, cfg.y_range, cfg, "y")};
}

Point2 dequantize_ctrl(Bins b, const QuantizerConfig& cfg) { return dequantize(b, cfg); }

}  // namespace seqgrow
