#pragma once

// Landmark / reachability / junction / centerline precision-recall metrics.
//
// Conventions: a ratio whose numerator and denominator sets are both empty
// on both sides scores 1.0 (nothing to find, nothing claimed); an empty side
// against a non-empty side scores 0.0.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seqgrow/lane_graph.hpp"

namespace seqgrow {

struct MatchConfig {
  double landmark_threshold = 1.5;
  std::vector<double> centerline_thresholds{0.5, 1.0, 1.5, 2.0};
  std::size_t samples_per_edge = 32;
};

// Throws std::invalid_argument for non-positive or non-increasing thresholds
// or fewer than two samples per edge.
void check_config(const MatchConfig& cfg);

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static PRF from(double precision, double recall);
  static PRF perfect() { return from(1.0, 1.0); }
  friend bool operator==(const PRF&, const PRF&) = default;
};

// Precision/recall from counts, with the empty-set conventions above.
PRF prf_from_counts(std::size_t true_positive, std::size_t predicted, std::size_t actual);

struct CenterlineScore {
  PRF mean;  // averaged over centerline_thresholds
  double detection_ratio = 0.0;
};

struct MetricReport {
  PRF landmark;
  PRF reachability;
  PRF junction_landmark;
  PRF junction_reachability;
  CenterlineScore centerline;
  PRF connectivity;
};

// Entry i is the gt node matched to pred node i, if any.
using NodeMatching = std::vector<std::optional<NodeId>>;

// Minimum-cost one-to-one matching on node distances; pairs farther than
// landmark_threshold are never matched. Maximizes the number of matched pairs
// first, then minimizes their summed distance.
NodeMatching match_landmarks(const LaneGraph& pred, const LaneGraph& gt, const MatchConfig& cfg = {});

PRF landmark_prf(const LaneGraph& pred, const LaneGraph& gt, const MatchConfig& cfg = {});

// True positives are reachable pred pairs (i,j) of matched nodes whose images
// are reachable in gt. Precision divides by all reachable pred pairs, recall
// by all reachable gt pairs.
PRF reachability_prf(const LaneGraph& pred, const LaneGraph& gt, const MatchConfig& cfg = {});

struct JunctionScore {
  PRF landmark;
  PRF reachability;
};

// Landmark and reachability after merging continuous nodes on both sides.
JunctionScore junction_prf(const LaneGraph& pred, const LaneGraph& gt, const MatchConfig& cfg = {});

struct CenterlineEval {
  CenterlineScore centerline;
  PRF connectivity;
};

// Samples every edge at samples_per_edge points. Per threshold, precision is
// the fraction of pred samples within tau of some gt sample and recall the
// converse; both are averaged over thresholds. Edges are matched one-to-one
// on symmetric Chamfer distance <= max tau, with consistent direction;
// detection_ratio = matched / gt edges. Connectivity scores successor pairs
// (a.to == b.from) whose edges are both matched and whose images are also a
// successor pair.
CenterlineEval centerline_prf(const LaneGraph& pred, const LaneGraph& gt, const MatchConfig& cfg = {});

MetricReport evaluate(const LaneGraph& pred, const LaneGraph& gt, const MatchConfig& cfg = {});

// One `key=value` line per field, e.g. `landmark.precision=1.000000`, in a
// fixed order.
std::string to_key_value(const MetricReport& r);
std::map<std::string, double> flatten(const MetricReport& r);

}  // namespace seqgrow
