#include <algorithm>
#include <cmath>
#include <set>

#include "seqgrow/batch.hpp"
#include "seqgrow/error.hpp"
#include "seqgrow/rng.hpp"

namespace seqgrow {

bool RoundTripOutcome::ok(double half_bin) const {
  // 1e-9 absorbs rounding in the bin-center arithmetic.
  return error.empty() && topology_exact && max_position_error <= half_bin + 1e-9;
}

RoundTripOutcome check_roundtrip(const LaneGraph& g, OrderingStrategy strategy, const EncodeOptions& opts) {
  RoundTripOutcome out;
  try {
    const std::vector<NodeId> order = g.empty() ? std::vector<NodeId>{} : order_nodes(g, strategy);
    const TokenSeq tokens = encode(g, order, opts);
    out.token_count = tokens.size();
    const LaneGraph back = decode(tokens, opts.quantizer, DecodeMode::kStrict).graph;
    if (back.size() != g.size()) return out;
    for (std::size_t r = 0; r < order.size(); ++r) {
      const Point2 a = g.nodes[order[r]].pos;
      const Point2 b = back.nodes[r].pos;
      out.max_position_error = std::max({out.max_position_error, std::abs(a.x - b.x), std::abs(a.y - b.y)});
    }
    std::set<NodePair> original, decoded;
    for (const Edge& e : g.edges) original.insert({e.from, e.to});
    for (const Edge& e : back.edges) decoded.insert({order[e.from], order[e.to]});
    out.topology_exact = original == decoded && back.edges.size() == g.edges.size();
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

TokenSeq fuzz_stream(std::uint64_t seed, std::uint64_t index, std::size_t max_len) {
  Rng rng(stream_seed(seed, index));
  const auto len = static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(max_len)));
  TokenSeq s;
  s.reserve(len);
  const bool open_with_bos = rng.bernoulli(0.75);
  for (std::size_t i = 0; i < len; ++i) {
    if (i == 0 && open_with_bos) {
      s.push_back(token::kBos);
      continue;
    }
    const double r = rng.uniform();
    token::Value v;
    if (r < 0.80) {
      v = static_cast<token::Value>(rng.index(token::kVocabSize));
    } else if (r < 0.95) {
      // Structural tokens, to reach block boundaries more often.
      v = static_cast<token::Value>(rng.between(token::kReserved, token::kPad));
    } else {
      v = static_cast<token::Value>(rng.between(-1000, 1000));
    }
    s.push_back(v);
  }
  return s;
}

namespace {

void accumulate(FuzzStats& stats, const TokenSeq& stream, const QuantizerConfig& cfg) {
  ++stats.streams;
  stats.tokens += stream.size();
  try {
    const DecodeResult r = decode(stream, cfg, DecodeMode::kLenient);
    stats.clean_streams += r.report.clean() ? 1 : 0;
    stats.diagnostics += r.report.diagnostics.size();
    stats.decoded_nodes += r.graph.size();
    stats.decoded_edges += r.graph.edges.size();
    if (!is_valid(r.graph)) ++stats.crashes;
  } catch (...) {
    ++stats.crashes;
  }
}

void merge(FuzzStats& into, const FuzzStats& part) {
  into.streams += part.streams;
  into.tokens += part.tokens;
  into.crashes += part.crashes;
  into.clean_streams += part.clean_streams;
  into.diagnostics += part.diagnostics;
  into.decoded_nodes += part.decoded_nodes;
  into.decoded_edges += part.decoded_edges;
}

}  // namespace

namespace batch {

std::vector<RoundTripOutcome> roundtrip_corpus(std::span<const LaneGraph> corpus, OrderingStrategy strategy,
                                               const EncodeOptions& opts) {
  std::vector<RoundTripOutcome> out(corpus.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(corpus.size()); ++i) {
    out[static_cast<std::size_t>(i)] = check_roundtrip(corpus[static_cast<std::size_t>(i)], strategy, opts);
  }
  return out;
}

FuzzStats fuzz_decode(std::uint64_t count, std::uint64_t seed, std::size_t max_len, const QuantizerConfig& cfg) {
  FuzzStats total;
#pragma omp parallel
  {
    FuzzStats local;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
      accumulate(local, fuzz_stream(seed, static_cast<std::uint64_t>(i), max_len), cfg);
    }
#pragma omp critical
    merge(total, local);
  }
  return total;
}

namespace serial {

std::vector<RoundTripOutcome> roundtrip_corpus(std::span<const LaneGraph> corpus, OrderingStrategy strategy,
                                               const EncodeOptions& opts) {
  std::vector<RoundTripOutcome> out;
  out.reserve(corpus.size());
  for (const LaneGraph& g : corpus) out.push_back(check_roundtrip(g, strategy, opts));
  return out;
}

FuzzStats fuzz_decode(std::uint64_t count, std::uint64_t seed, std::size_t max_len, const QuantizerConfig& cfg) {
  FuzzStats total;
  for (std::uint64_t i = 0; i < count; ++i) accumulate(total, fuzz_stream(seed, i, max_len), cfg);
  return total;
}

}  // namespace serial
}  // namespace batch
}  // namespace seqgrow
