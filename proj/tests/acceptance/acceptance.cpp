// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "seqgrow/batch.hpp"
#include "seqgrow/error.hpp"
#include "seqgrow/eval_metrics.hpp"
#include "seqgrow/node_ordering.hpp"
#include "seqgrow/resegmentation.hpp"
#include "seqgrow/sequence_codec.hpp"
#include "test_support.hpp"

using namespace seqgrow;
namespace t = seqgrow::testing;

namespace {

constexpr std::uint64_t kCorpusSeed = 20240611;
constexpr std::size_t kCorpusSize = 1200;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

void report(const char* name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s %s (%.2fs)%s%s\n", o.pass ? "PASS" : "FAIL", name, secs, o.detail.empty() ? "" : ": ",
              o.detail.c_str());
  std::fflush(stdout);
}

std::vector<NodeId> identity(std::size_t n) {
  std::vector<NodeId> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<NodeId>(i);
  return v;
}

// Independent grammar walk: checks every token sits in the class its slot
// requires. Returns the number of blocks, or -1 on a violation.
long walk_grammar(const TokenSeq& s) {
  auto in = [](token::Value v, token::Value lo, token::Value hi) { return v >= lo && v <= hi; };
  std::size_t i = 0;
  if (s.empty() || s[i++] != 574) return -1;
  long blocks = 0;
  while (i < s.size() && s[i] != 573) {
    if (i + 1 >= s.size() || !in(s[i], 0, 199) || !in(s[i + 1], 0, 199)) return -1;
    i += 2;
    for (token::Value terminator : {token::Value{571}, token::Value{572}}) {
      while (i < s.size() && s[i] != terminator) {
        if (i + 2 >= s.size() || !in(s[i], 201, 349) || !in(s[i + 1], 350, 569) || !in(s[i + 2], 350, 569)) return -1;
        i += 3;
      }
      if (i >= s.size()) return -1;
      ++i;
    }
    ++blocks;
  }
  if (i + 1 != s.size()) return -1;
  return blocks;
}

struct StrictFailure {
  bool threw = false;
  std::size_t position = 0;
  DiagnosticKind first_kind{};
};

StrictFailure strict_failure(const TokenSeq& s) {
  StrictFailure f;
  const auto diags = validate_sequence(s);
  if (!diags.empty()) f.first_kind = diags.front().kind;
  try {
    decode(s, {}, DecodeMode::kStrict);
  } catch (const DecodeError& e) {
    f.threw = true;
    f.position = e.position();
  }
  return f;
}

}  // namespace

int main() {
  const auto corpus = t::synthetic_corpus(kCorpusSize, kCorpusSeed);

  report("round-trip soundness", [&] {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t min_n = SIZE_MAX, max_n = 0, cycles = 0, antiparallel = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const LaneGraph& g = corpus[i];
      min_n = std::min(min_n, g.size());
      max_n = std::max(max_n, g.size());
      cycles += t::has_cycle(g);
      antiparallel += t::has_antiparallel(g);
      const auto order = order_nodes(g, OrderingStrategy::kDfs);
      const LaneGraph back = decode(encode(g, order), {}, DecodeMode::kStrict).graph;
      const std::string why = t::roundtrip_mismatch(g, order, back, 0.25);
      if (!why.empty()) o.fail("graph " + std::to_string(i) + ": " + why);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (corpus.size() < 1000) o.fail("corpus too small");
    if (min_n != 1 || max_n != 150) o.fail("node counts span " + std::to_string(min_n) + ".." + std::to_string(max_n));
    if (cycles < 100) o.fail("only " + std::to_string(cycles) + " graphs with cycles");
    if (antiparallel < 100) o.fail("only " + std::to_string(antiparallel) + " graphs with antiparallel pairs");
    if (secs >= 60.0) o.fail("took " + std::to_string(secs) + " s");
    if (o.pass) {
      o.detail = std::to_string(corpus.size()) + " graphs, nodes " + std::to_string(min_n) + ".." +
                 std::to_string(max_n) + ", " + std::to_string(cycles) + " cyclic, " + std::to_string(antiparallel) +
                 " antiparallel";
    }
    return o;
  });

  report("expressivity beyond DAGs", [] {
    Outcome o;
    LaneGraph pair;
    pair.add_node({-5, 2});
    pair.add_node({5, 2});
    pair.add_edge(0, 1, {0, 4});
    pair.add_edge(1, 0, {0, 0});
    LaneGraph tri;
    tri.add_node({0, 0});
    tri.add_node({10, 0});
    tri.add_node({5, 8});
    tri.add_straight_edge(0, 1);
    tri.add_straight_edge(1, 2);
    tri.add_straight_edge(2, 0);
    for (const LaneGraph* g : {&pair, &tri}) {
      for (auto s : kAllOrderings) {
        const auto order = order_nodes(*g, s);
        const LaneGraph back = decode(encode(*g, order), {}, DecodeMode::kStrict).graph;
        const std::string why = t::roundtrip_mismatch(*g, order, back, 0.25);
        if (!why.empty()) o.fail(std::string(to_string(s)) + ": " + why);
      }
    }
    return o;
  });

  report("token vocabulary conformance", [&] {
    Outcome o;
    if (token::kTo != 571 || token::kSep != 572 || token::kEos != 573 || token::kBos != 574 || token::kPad != 575) {
      o.fail("special token values");
    }
    QuantizerConfig q;
    LaneGraph one;
    one.add_node(dequantize({10, 20}, q));
    if (encode(one, identity(1)) != TokenSeq{574, 10, 20, 571, 572, 573}) o.fail("one-node golden sequence");
    LaneGraph two;
    two.add_node(dequantize({10, 20}, q));
    two.add_node(dequantize({30, 40}, q));
    two.add_edge(0, 1, dequantize({20, 30}, q));
    if (encode(two, identity(2)) != TokenSeq{574, 10, 20, 571, 572, 30, 40, 201, 370, 380, 571, 572, 573}) {
      o.fail("two-node golden sequence");
    }
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      for (auto s : kAllOrderings) {
        const TokenSeq seq = encode(corpus[i], order_nodes(corpus[i], s));
        for (token::Value v : seq) {
          if (v < 0 || v > 575) o.fail("graph " + std::to_string(i) + ": token " + std::to_string(v));
        }
        if (walk_grammar(seq) != static_cast<long>(corpus[i].size())) {
          o.fail("graph " + std::to_string(i) + ": token class out of place");
        }
      }
    }
    return o;
  });

  report("reachability oracle equivalence", [] {
    Outcome o;
    Rng rng(kCorpusSeed + 1);
    for (int trial = 0; trial < 1000; ++trial) {
      const LaneGraph gt = t::random_graph(rng, 1 + rng.index(8), rng.uniform(0.1, 0.4));
      LaneGraph pred = t::random_graph(rng, 1 + rng.index(8), rng.uniform(0.1, 0.4));
      // Move most pred nodes near a gt node so matches occur; continuous
      // offsets keep distances tie-free.
      for (std::size_t i = 0; i < std::min(pred.size(), gt.size()); ++i) {
        if (rng.bernoulli(0.75)) pred.nodes[i].pos = gt.nodes[i].pos + Point2{rng.uniform(-1, 1), rng.uniform(-1, 1)};
      }
      if (reachable_pairs(gt) != t::brute_reachable_pairs(gt)) o.fail("reachable_pairs, trial " + std::to_string(trial));
      const PRF got = reachability_prf(pred, gt);
      const auto want = t::brute_reachability_prf(pred, gt, MatchConfig{}.landmark_threshold);
      if (got.precision != want.precision || got.recall != want.recall) {
        o.fail("reachability_prf, trial " + std::to_string(trial));
      }
    }
    return o;
  });

  report("metric self-consistency", [&] {
    Outcome o;
    for (std::size_t i = 0; i < 200; ++i) {
      const LaneGraph& g = corpus[i];
      for (const auto& [key, value] : flatten(evaluate(g, g))) {
        if (value != 1.0) o.fail("graph " + std::to_string(i) + ": " + key + "=" + std::to_string(value));
      }
    }
    Rng rng(kCorpusSeed + 2);
    for (std::size_t i = 0; i < 200; ++i) {
      const LaneGraph& g = corpus[i];
      LaneGraph p = t::random_graph(rng, 1 + rng.index(std::max<std::size_t>(g.size(), 2)), 0.1);
      for (std::size_t k = 0; k < std::min(p.size(), g.size()); ++k) {
        p.nodes[k].pos = g.nodes[k].pos + Point2{rng.uniform(-2, 2), rng.uniform(-2, 2)};
      }
      const PRF ab = landmark_prf(p, g);
      const PRF ba = landmark_prf(g, p);
      if (ab.precision != ba.recall || ab.recall != ba.precision) o.fail("symmetry, pair " + std::to_string(i));
    }
    return o;
  });

  report("re-segmentation round-trip", [] {
    Outcome o;
    const auto graphs = t::junction_only_corpus(200, kCorpusSeed + 3);
    if (graphs.size() != 200) o.fail("junction-only corpus has " + std::to_string(graphs.size()) + " graphs");
    std::size_t split_nodes = 0;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      const LaneGraph& g = graphs[i];
      for (double interval : {20.0, 30.0, 40.0}) {
        const LaneGraph s = split_fixed_length(g, interval);
        split_nodes += s.size() - g.size();
        const LaneGraph m = merge_continuous_nodes(s);
        const JunctionScore js = junction_prf(m, g);
        if (!(js.landmark == PRF::perfect() && js.reachability == PRF::perfect())) {
          o.fail("graph " + std::to_string(i) + " at " + std::to_string(interval) + " m");
        }
        if (!(merge_continuous_nodes(m) == m)) o.fail("merge not idempotent, graph " + std::to_string(i));
      }
    }
    if (split_nodes == 0) o.fail("no edge was long enough to split");
    if (o.pass) o.detail = std::to_string(split_nodes) + " split nodes removed";
    return o;
  });

  report("decoder robustness", [&] {
    Outcome o;
    const FuzzStats fz = batch::fuzz_decode(1'000'000, kCorpusSeed + 4);
    if (fz.streams != 1'000'000) o.fail("streams=" + std::to_string(fz.streams));
    if (fz.crashes != 0) o.fail("crashes=" + std::to_string(fz.crashes));

    Rng rng(kCorpusSeed + 5);
    std::size_t truncations = 0, forward = 0, reserved = 0;
    for (std::size_t i = 0; i < 400; ++i) {
      const LaneGraph& g = corpus[i];
      const TokenSeq clean = encode(g, order_nodes(g, OrderingStrategy::kDfs));
      const std::string where = "graph " + std::to_string(i);

      const std::size_t cut = 1 + rng.index(clean.size() - 1);
      const TokenSeq cut_seq(clean.begin(), clean.begin() + static_cast<long>(cut));
      const StrictFailure tf = strict_failure(cut_seq);
      if (!tf.threw || tf.first_kind != DiagnosticKind::kTruncated || tf.position != cut) {
        o.fail(where + ": truncation at " + std::to_string(cut));
      }
      ++truncations;

      // Index tokens with the rank of the block they sit in.
      std::vector<std::pair<std::size_t, long>> index_slots;
      long rank = 1;
      for (std::size_t k = 1; k + 1 < clean.size(); ++k) {
        if (token::classify(clean[k]) == token::Class::kIndex) index_slots.emplace_back(k, rank);
        if (clean[k] == token::kSep) ++rank;
      }
      if (!index_slots.empty()) {
        const auto [at, block_rank] = index_slots[rng.index(index_slots.size())];
        TokenSeq bad = clean;
        const long max_rank = token::kMaxReferencedRank;
        const long r = block_rank <= max_rank ? rng.between(block_rank, max_rank) : 0;
        bad[at] = static_cast<token::Value>(token::kIndexBase + r);
        const StrictFailure ff = strict_failure(bad);
        if (!ff.threw || ff.first_kind != DiagnosticKind::kForwardReference || ff.position != at) {
          o.fail(where + ": forward reference at " + std::to_string(at));
        }
        ++forward;
      }

      const std::size_t at = 1 + rng.index(clean.size() - 1);
      TokenSeq bad = clean;
      bad[at] = token::kReserved;
      const StrictFailure rf = strict_failure(bad);
      if (!rf.threw || rf.first_kind != DiagnosticKind::kReservedToken || rf.position != at) {
        o.fail(where + ": reserved token at " + std::to_string(at));
      }
      ++reserved;
    }
    if (forward < 300) o.fail("only " + std::to_string(forward) + " forward-reference cases");
    if (o.pass) {
      o.detail = "1000000 streams, 0 crashes; strict cases " + std::to_string(truncations) + "/" +
                 std::to_string(forward) + "/" + std::to_string(reserved);
    }
    return o;
  });

  report("ordering ablation harness", [&] {
    Outcome o;
    for (auto s : kAllOrderings) {
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        const LaneGraph& g = corpus[i];
        const auto order = order_nodes(g, s);
        if (!t::is_permutation_of_nodes(order, g.size())) {
          o.fail(std::string(to_string(s)) + ": not a permutation, graph " + std::to_string(i));
          continue;
        }
        const LaneGraph back = decode(encode(g, order), {}, DecodeMode::kStrict).graph;
        const std::string why = t::roundtrip_mismatch(g, order, back, 0.25);
        if (!why.empty()) o.fail(std::string(to_string(s)) + ", graph " + std::to_string(i) + ": " + why);
      }
    }
    return o;
  });

  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
