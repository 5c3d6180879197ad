#include "seqgrow/sequence_codec.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "seqgrow/error.hpp"

namespace seqgrow {

const char* to_string(DiagnosticKind kind) {
  switch (kind) {
    case DiagnosticKind::kMissingBos: return "missing_bos";
    case DiagnosticKind::kInvalidToken: return "invalid_token";
    case DiagnosticKind::kReservedToken: return "reserved_token";
    case DiagnosticKind::kUnexpectedToken: return "unexpected_token";
    case DiagnosticKind::kMalformedHeader: return "malformed_header";
    case DiagnosticKind::kIncompleteEntry: return "incomplete_entry";
    case DiagnosticKind::kForwardReference: return "forward_reference";
    case DiagnosticKind::kUnseenRank: return "unseen_rank";
    case DiagnosticKind::kDuplicateEntry: return "duplicate_entry";
    case DiagnosticKind::kUnorderedEntry: return "unordered_entry";
    case DiagnosticKind::kMissingTo: return "missing_to";
    case DiagnosticKind::kTooManyNodes: return "too_many_nodes";
    case DiagnosticKind::kTruncated: return "truncated";
    case DiagnosticKind::kTrailingTokens: return "trailing_tokens";
  }
  return "unknown";
}

namespace {

using token::Class;
using token::Value;

struct Entry {
  NodeId peer;  // earlier node id
  std::size_t rank;
  const Edge* edge;
};

std::vector<std::size_t> ranks_from_order(const LaneGraph& g, std::span<const NodeId> order) {
  if (order.size() != g.size()) {
    throw EncodeError("order has " + std::to_string(order.size()) + " entries for " + std::to_string(g.size()) +
                      " nodes");
  }
  std::vector<std::size_t> rank(g.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] >= g.size() || rank[order[i]] != 0) {
      throw EncodeError("order is not a permutation of the node ids");
    }
    rank[order[i]] = i + 1;
  }
  return rank;
}

// Incident edges of each node to earlier-ranked nodes, sorted by rank.
struct EntryLists {
  std::vector<std::vector<Entry>> from;
  std::vector<std::vector<Entry>> to;
};

EntryLists entry_lists(const LaneGraph& g, const std::vector<std::size_t>& rank) {
  EntryLists lists{std::vector<std::vector<Entry>>(g.size()), std::vector<std::vector<Entry>>(g.size())};
  for (const Edge& e : g.edges) {
    if (rank[e.from] < rank[e.to]) {
      lists.from[e.to].push_back({e.from, rank[e.from], &e});
    } else {
      lists.to[e.from].push_back({e.to, rank[e.to], &e});
    }
  }
  auto by_rank = [](const Entry& a, const Entry& b) { return a.rank < b.rank; };
  for (auto& l : lists.from) std::sort(l.begin(), l.end(), by_rank);
  for (auto& l : lists.to) std::sort(l.begin(), l.end(), by_rank);
  return lists;
}

class Parser {
 public:
  Parser(std::span<const Value> tokens, const QuantizerConfig& cfg) : tokens_(tokens), cfg_(cfg) {}

  DecodeResult run() {
    if (tokens_.empty() || tokens_[0] != token::kBos) {
      diagnose(0, DiagnosticKind::kMissingBos, "sequence does not start with BOS");
    } else {
      pos_ = 1;
    }
    bool ended = false;
    while (pos_ < tokens_.size()) {
      if (tokens_[pos_] == token::kEos) {
        ++pos_;
        ended = true;
        break;
      }
      parse_block();
    }
    if (!ended && !truncated_) {
      diagnose(tokens_.size(), DiagnosticKind::kTruncated, "stream ended before EOS");
    }
    const std::size_t consumed = pos_;
    for (std::size_t i = pos_; i < tokens_.size(); ++i) {
      if (tokens_[i] != token::kPad) {
        diagnose(i, DiagnosticKind::kTrailingTokens, "tokens other than PAD after EOS");
        break;
      }
    }
    DecodeResult result{std::move(graph_), {consumed, std::move(blocks_), std::move(diags_)}};
    return result;
  }

 private:
  bool at_end() const { return pos_ >= tokens_.size(); }
  Class cls(std::size_t i) const { return token::classify(tokens_[i]); }
  std::ptrdiff_t current_block() const { return static_cast<std::ptrdiff_t>(blocks_.size()) - 1; }

  // Reserved and out-of-vocabulary tokens are reported as such wherever they
  // appear, ahead of the structural error they cause.
  std::optional<DiagnosticKind> out_of_grammar(std::size_t i) const {
    if (cls(i) == Class::kReserved) return DiagnosticKind::kReservedToken;
    if (cls(i) == Class::kInvalid) return DiagnosticKind::kInvalidToken;
    return std::nullopt;
  }

  static const char* token_problem(DiagnosticKind kind) {
    return kind == DiagnosticKind::kReservedToken ? "reserved token 570" : "token outside the vocabulary";
  }

  void diagnose(std::size_t at, DiagnosticKind kind, std::string message, std::ptrdiff_t block = -1) {
    if (block >= 0) blocks_[static_cast<std::size_t>(block)].repaired = true;
    if (kind == DiagnosticKind::kTruncated) truncated_ = true;
    diags_.push_back({at, kind, block, std::move(message)});
  }

  // Advances past the next SEP. Stops before EOS; reports truncation at end.
  void skip_block_rest() {
    while (!at_end()) {
      const Value t = tokens_[pos_];
      if (t == token::kEos) return;
      ++pos_;
      if (t == token::kSep) return;
    }
    diagnose(pos_, DiagnosticKind::kTruncated, "stream ended inside a node block", current_block());
  }

  void drop_block() { rank_to_node_.push_back(-1); }

  void parse_block() {
    blocks_.push_back({pos_, false, false});
    const std::ptrdiff_t block = current_block();
    const std::size_t rank = blocks_.size();

    if (rank > token::kMaxNodes) {
      diagnose(pos_, DiagnosticKind::kTooManyNodes,
               "more than " + std::to_string(token::kMaxNodes) + " node blocks", block);
      skip_block_rest();
      drop_block();
      return;
    }

    // Header: two coordinate tokens.
    for (std::size_t k = 0; k < 2; ++k) {
      const std::size_t at = pos_ + k;
      if (at >= tokens_.size() || tokens_[at] == token::kEos) {
        diagnose(at, DiagnosticKind::kTruncated, "node block ends inside its position", block);
        pos_ = at;
        drop_block();
        return;
      }
      if (const auto bad = out_of_grammar(at)) {
        diagnose(at, *bad, std::string(token_problem(*bad)) + " in node position; block dropped", block);
        pos_ = at + 1;
        skip_block_rest();
        drop_block();
        return;
      }
      if (cls(at) != Class::kCoord) {
        diagnose(at, DiagnosticKind::kMalformedHeader,
                 std::string("expected a coordinate token, got ") + token::to_string(cls(at)) + " " +
                     std::to_string(tokens_[at]),
                 block);
        pos_ = at;
        skip_block_rest();
        drop_block();
        return;
      }
    }
    const Bins pos_bins{tokens_[pos_], tokens_[pos_ + 1]};
    pos_ += 2;

    struct Parsed {
      std::size_t rank;
      Bins ctrl;
    };
    std::vector<Parsed> from;
    std::vector<Parsed> to;
    bool seen_to = false;

    while (true) {
      if (at_end()) {
        if (!truncated_) diagnose(pos_, DiagnosticKind::kTruncated, "stream ended inside a node block", block);
        drop_block();
        return;
      }
      const Value t = tokens_[pos_];
      switch (cls(pos_)) {
        case Class::kIndex:
          parse_entry(rank, block, seen_to ? to : from);
          break;
        case Class::kTo:
          if (seen_to) diagnose(pos_, DiagnosticKind::kUnexpectedToken, "second TO in node block", block);
          seen_to = true;
          ++pos_;
          break;
        case Class::kSep:
          if (!seen_to) {
            diagnose(pos_, DiagnosticKind::kMissingTo, "node block closed without TO; entries read as FROM", block);
          }
          ++pos_;
          finish_block(pos_bins, from, to);
          return;
        case Class::kEos:
          diagnose(pos_, DiagnosticKind::kTruncated, "EOS inside an unterminated node block", block);
          drop_block();
          return;
        case Class::kReserved:
          diagnose(pos_, DiagnosticKind::kReservedToken, "reserved token 570", block);
          ++pos_;
          break;
        case Class::kInvalid:
          diagnose(pos_, DiagnosticKind::kInvalidToken, "token " + std::to_string(t) + " outside the vocabulary",
                   block);
          ++pos_;
          break;
        default:
          diagnose(pos_, DiagnosticKind::kUnexpectedToken,
                   std::string("unexpected ") + token::to_string(cls(pos_)) + " token " + std::to_string(t), block);
          ++pos_;
          break;
      }
    }
  }

  template <typename List>
  void parse_entry(std::size_t rank, std::ptrdiff_t block, List& list) {
    const std::size_t at = pos_;
    std::size_t ctrl_tokens = 0;
    while (ctrl_tokens < 2 && at + 1 + ctrl_tokens < tokens_.size() && cls(at + 1 + ctrl_tokens) == Class::kBezier) {
      ++ctrl_tokens;
    }
    pos_ = at + 1 + ctrl_tokens;
    if (ctrl_tokens < 2 && at_end()) {
      diagnose(pos_, DiagnosticKind::kTruncated, "stream ended inside an edge entry", block);
      return;
    }
    if (const auto bad = ctrl_tokens < 2 ? out_of_grammar(pos_) : std::nullopt) {
      diagnose(pos_, *bad, std::string(token_problem(*bad)) + " inside an edge entry; entry dropped", block);
      ++pos_;
      return;
    }
    if (ctrl_tokens < 2) {
      diagnose(at, DiagnosticKind::kIncompleteEntry, "edge entry lacks its two control point tokens; dropped",
               block);
      return;
    }
    const auto ref = static_cast<std::size_t>(tokens_[at] - cfg_.index_base);
    if (ref == 0 || ref >= rank) {
      diagnose(at, DiagnosticKind::kForwardReference,
               "entry references rank " + std::to_string(ref) + " from node rank " + std::to_string(rank) +
                   "; dropped",
               block);
      return;
    }
    if (rank_to_node_[ref - 1] < 0) {
      diagnose(at, DiagnosticKind::kUnseenRank, "entry references dropped block " + std::to_string(ref) + "; dropped",
               block);
      return;
    }
    const auto same = [ref](const auto& p) { return p.rank == ref; };
    if (std::any_of(list.begin(), list.end(), same)) {
      diagnose(at, DiagnosticKind::kDuplicateEntry, "repeated entry for rank " + std::to_string(ref) + "; dropped",
               block);
      return;
    }
    if (!list.empty() && list.back().rank > ref) {
      diagnose(at, DiagnosticKind::kUnorderedEntry, "entries not in ascending rank order", block);
    }
    list.push_back({ref, Bins{tokens_[at + 1] - cfg_.bezier_base, tokens_[at + 2] - cfg_.bezier_base}});
  }

  template <typename List>
  void finish_block(Bins pos_bins, const List& from, const List& to) {
    const NodeId id = graph_.add_node(dequantize(pos_bins, cfg_));
    blocks_.back().kept = true;
    rank_to_node_.push_back(static_cast<std::ptrdiff_t>(id));
    for (const auto& p : from) {
      graph_.add_edge(static_cast<NodeId>(rank_to_node_[p.rank - 1]), id, dequantize_ctrl(p.ctrl, cfg_));
    }
    for (const auto& p : to) {
      graph_.add_edge(id, static_cast<NodeId>(rank_to_node_[p.rank - 1]), dequantize_ctrl(p.ctrl, cfg_));
    }
  }

  std::span<const Value> tokens_;
  const QuantizerConfig& cfg_;
  std::size_t pos_ = 0;
  bool truncated_ = false;
  LaneGraph graph_;
  std::vector<BlockStatus> blocks_;
  std::vector<Diagnostic> diags_;
  // Rank (1-based, minus one) to node id in graph_, or -1 when dropped.
  std::vector<std::ptrdiff_t> rank_to_node_;
};

}  // namespace

TokenSeq encode(const LaneGraph& g, std::span<const NodeId> order, const EncodeOptions& opts) {
  check_config(opts.quantizer);
  require_valid(g);
  if (g.size() > token::kMaxNodes) {
    throw EncodeError("graph has " + std::to_string(g.size()) + " nodes; at most " +
                      std::to_string(token::kMaxNodes) + " fit the index range");
  }
  const auto rank = ranks_from_order(g, order);
  const auto lists = entry_lists(g, rank);
  const QuantizerConfig& q = opts.quantizer;

  TokenSeq out;
  out.reserve(encoded_length(g, order));
  out.push_back(token::kBos);
  auto emit_entries = [&](const std::vector<Entry>& entries) {
    for (const Entry& en : entries) {
      const Bins c = quantize_ctrl(en.edge->ctrl, q);
      out.push_back(q.index_base + static_cast<Value>(en.rank));
      out.push_back(q.bezier_base + c.x);
      out.push_back(q.bezier_base + c.y);
    }
  };
  for (NodeId id : order) {
    const Bins b = quantize(g.nodes[id].pos, q, opts.node_range);
    out.push_back(b.x);
    out.push_back(b.y);
    emit_entries(lists.from[id]);
    out.push_back(token::kTo);
    emit_entries(lists.to[id]);
    out.push_back(token::kSep);
  }
  out.push_back(token::kEos);
  return out;
}

DecodeResult decode(std::span<const token::Value> tokens, const QuantizerConfig& cfg, DecodeMode mode) {
  check_config(cfg);
  DecodeResult result = Parser(tokens, cfg).run();
  if (mode == DecodeMode::kStrict && !result.report.diagnostics.empty()) {
    const Diagnostic& d = result.report.diagnostics.front();
    throw DecodeError(d.position, std::string(to_string(d.kind)) + ": " + d.message);
  }
  return result;
}

std::vector<Diagnostic> validate_sequence(std::span<const token::Value> tokens, const QuantizerConfig& cfg) {
  return decode(tokens, cfg, DecodeMode::kLenient).report.diagnostics;
}

std::size_t encoded_length(const LaneGraph& g, std::span<const NodeId> order) {
  ranks_from_order(g, order);
  // Every edge is written exactly once, in the block of its later endpoint.
  return 2 + 4 * g.size() + 3 * g.edges.size();
}

}  // namespace seqgrow
