#pragma once

// Corpus-level drivers over the codec: OpenMP parallel over graphs or
// streams, each with a serial reference in batch::serial. Per-item outputs
// are stored by index and reductions are over integers only, so results do
// not depend on the thread count.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "seqgrow/lane_graph.hpp"
#include "seqgrow/node_ordering.hpp"
#include "seqgrow/sequence_codec.hpp"

namespace seqgrow {

struct RoundTripOutcome {
  bool topology_exact = false;
  // Largest per-axis node position error, meters.
  double max_position_error = 0.0;
  std::size_t token_count = 0;
  // Non-empty when encode or strict decode threw.
  std::string error;

  // Exact topology and positions within half a bin on each axis.
  bool ok(double half_bin) const;
};

// Encode with the strategy's order, strict-decode, and compare under the
// rank relabeling.
RoundTripOutcome check_roundtrip(const LaneGraph& g, OrderingStrategy strategy, const EncodeOptions& opts = {});

struct FuzzStats {
  std::uint64_t streams = 0;
  std::uint64_t tokens = 0;
  // Streams whose lenient decode threw; must stay zero.
  std::uint64_t crashes = 0;
  std::uint64_t clean_streams = 0;
  std::uint64_t diagnostics = 0;
  std::uint64_t decoded_nodes = 0;
  std::uint64_t decoded_edges = 0;

  friend bool operator==(const FuzzStats&, const FuzzStats&) = default;
};

// Random token stream `index` of a fuzz run: length in [0, max_len], values
// mostly inside the vocabulary with a share of out-of-vocabulary integers,
// often opened by BOS so parsing reaches past the header.
TokenSeq fuzz_stream(std::uint64_t seed, std::uint64_t index, std::size_t max_len);

namespace batch {

std::vector<RoundTripOutcome> roundtrip_corpus(std::span<const LaneGraph> corpus, OrderingStrategy strategy,
                                               const EncodeOptions& opts = {});
FuzzStats fuzz_decode(std::uint64_t count, std::uint64_t seed, std::size_t max_len = 96,
                      const QuantizerConfig& cfg = {});

namespace serial {

std::vector<RoundTripOutcome> roundtrip_corpus(std::span<const LaneGraph> corpus, OrderingStrategy strategy,
                                               const EncodeOptions& opts = {});
FuzzStats fuzz_decode(std::uint64_t count, std::uint64_t seed, std::size_t max_len = 96,
                      const QuantizerConfig& cfg = {});

}  // namespace serial
}  // namespace batch
}  // namespace seqgrow
