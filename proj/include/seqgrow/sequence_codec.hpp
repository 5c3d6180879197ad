#pragma once

// Lane graph <-> token sequence.
//
// A graph is written as a chain of expansions: nodes are appended one at a
// time in visit order and each step lists the new node's edges to nodes that
// were already written. Layout:
//
//   BOS
//   per node n (rank r_n = 1, 2, ... in visit order):
//     bin_x bin_y                           node position, coordinate bins
//     { idx ctrl_x ctrl_y }*                edges k -> n, earlier k
//     TO
//     { idx ctrl_x ctrl_y }*                edges n -> k, earlier k
//     SEP
//   EOS
//
// idx = index_base + rank(k); ctrl tokens are bezier_base + control bin.
// Entries within each list are sorted by ascending rank. PAD may follow EOS.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "seqgrow/lane_graph.hpp"
#include "seqgrow/quantizer.hpp"

namespace seqgrow {

using TokenSeq = std::vector<token::Value>;

struct EncodeOptions {
  QuantizerConfig quantizer;
  // Range handling for node positions; control points follow
  // quantizer.clamp_ctrl.
  RangeMode node_range = RangeMode::kStrict;
};

// order must be a permutation of the node ids. Throws EncodeError for more
// than token::kMaxNodes nodes, a bad permutation or out-of-range positions;
// InvalidGraph for an invalid graph.
TokenSeq encode(const LaneGraph& g, std::span<const NodeId> order, const EncodeOptions& opts = {});

enum class DecodeMode { kStrict, kLenient };

enum class DiagnosticKind {
  kMissingBos,
  kInvalidToken,      // outside [0, 575]
  kReservedToken,     // 570
  kUnexpectedToken,   // token class not allowed here
  kMalformedHeader,   // block does not start with two coordinate tokens
  kIncompleteEntry,   // index token not followed by two Bezier tokens
  kForwardReference,  // rank 0 or rank >= the current node's rank
  kUnseenRank,        // reference to a block that was dropped
  kDuplicateEntry,
  kUnorderedEntry,
  kMissingTo,
  kTooManyNodes,
  kTruncated,         // stream ended inside a block or before EOS
  kTrailingTokens,    // non-PAD tokens after EOS
};

const char* to_string(DiagnosticKind kind);

struct Diagnostic {
  std::size_t position = 0;
  DiagnosticKind kind = DiagnosticKind::kUnexpectedToken;
  // Zero-based block index, or -1 outside any block.
  std::ptrdiff_t block = -1;
  std::string message;
};

struct BlockStatus {
  std::size_t start = 0;
  // Whether the block's node made it into the decoded graph.
  bool kept = false;
  // Whether any repair touched this block.
  bool repaired = false;
};

struct DecodeReport {
  std::size_t consumed = 0;
  std::vector<BlockStatus> blocks;
  // Every grammar violation, each paired with the repair lenient mode made.
  std::vector<Diagnostic> diagnostics;

  bool clean() const { return diagnostics.empty(); }
};

struct DecodeResult {
  LaneGraph graph;
  DecodeReport report;
};

// Strict mode throws DecodeError at the first grammar violation. Lenient mode
// never throws: it drops malformed blocks at the next SEP, drops bad edge
// entries and records every repair in the report. Decoded node ids follow
// rank order; positions and control points are bin centers.
DecodeResult decode(std::span<const token::Value> tokens, const QuantizerConfig& cfg = {},
                    DecodeMode mode = DecodeMode::kStrict);

// Grammar diagnostics; empty iff strict decode succeeds.
std::vector<Diagnostic> validate_sequence(std::span<const token::Value> tokens, const QuantizerConfig& cfg = {});

// Exact token count of encode() for this graph and order.
std::size_t encoded_length(const LaneGraph& g, std::span<const NodeId> order);

}  // namespace seqgrow
