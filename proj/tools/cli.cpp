#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "seqgrow/batch.hpp"
#include "seqgrow/error.hpp"
#include "seqgrow/eval_metrics.hpp"
#include "seqgrow/graph_io.hpp"
#include "seqgrow/node_ordering.hpp"
#include "seqgrow/resegmentation.hpp"
#include "seqgrow/sequence_codec.hpp"
#include "seqgrow/svg.hpp"
#include "seqgrow/synth.hpp"

namespace seqgrow::cli {
namespace {

namespace fs = std::filesystem;

// Signals a failure whose message is already meaningful to the user.
struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuantizerFlags {
  std::vector<double> x_range{-48.0, 48.0};
  std::vector<double> y_range{-30.0, 30.0};
  double resolution = 0.5;
  bool no_clamp_ctrl = false;

  void attach(CLI::App* app) {
    app->add_option("--x-range", x_range, "BEV x range in meters, min,max")->delimiter(',')->expected(2);
    app->add_option("--y-range", y_range, "BEV y range in meters, min,max")->delimiter(',')->expected(2);
    app->add_option("--resolution", resolution, "Meters per bin")->capture_default_str();
    app->add_flag("--no-clamp-ctrl", no_clamp_ctrl, "Fail on control points outside the Bezier token range");
  }

  QuantizerConfig config() const {
    QuantizerConfig c;
    c.x_range = {x_range[0], x_range[1]};
    c.y_range = {y_range[0], y_range[1]};
    c.resolution = resolution;
    c.clamp_ctrl = !no_clamp_ctrl;
    check_config(c);
    return c;
  }
};

OrderingStrategy ordering_from(const std::string& name) {
  const auto s = parse_ordering(name);
  if (!s) throw CLI::ValidationError("--order", "expected dfs, bfs, coord or center");
  return *s;
}

const CLI::IsMember kOrderNames(std::vector<std::string>{"dfs", "bfs", "coord", "center"});

bool looks_like_json(const fs::path& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  return first != std::string::npos && text[first] == '{';
}

// Graph file as is, or the first line of a token file decoded leniently.
LaneGraph load_graph_or_tokens(const fs::path& path, const QuantizerConfig& q) {
  if (looks_like_json(path)) return load_graph(path).graph;
  const auto lines = load_token_file(path);
  if (lines.empty()) throw Failure(path.string() + ": empty token file");
  return decode(lines.front(), q, DecodeMode::kLenient).graph;
}

std::vector<fs::path> json_files(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::string numbered(const std::string& stem, std::size_t i, const std::string& ext) {
  std::ostringstream os;
  os << stem << '_';
  os.width(6);
  os.fill('0');
  os << i << ext;
  return os.str();
}

std::string report_text(const DecodeReport& r) {
  std::ostringstream os;
  os << "consumed=" << r.consumed << "\n";
  os << "blocks=" << r.blocks.size() << "\n";
  os << "kept_blocks=" << std::count_if(r.blocks.begin(), r.blocks.end(), [](const auto& b) { return b.kept; })
     << "\n";
  os << "diagnostics=" << r.diagnostics.size() << "\n";
  for (const Diagnostic& d : r.diagnostics) {
    os << "diagnostic=" << d.position << " " << to_string(d.kind) << " block=" << d.block << " " << d.message
       << "\n";
  }
  return os.str();
}

int cmd_encode(const fs::path& in, const fs::path& out, const std::string& order_name, const QuantizerFlags& qf,
               bool clamp_nodes, std::ostream&) {
  const LaneGraph g = load_graph(in).graph;
  EncodeOptions opts{qf.config(), clamp_nodes ? RangeMode::kClamp : RangeMode::kStrict};
  const auto order = g.empty() ? std::vector<NodeId>{} : order_nodes(g, ordering_from(order_name));
  save_token_file(out, {encode(g, order, opts)});
  return kOk;
}

int cmd_decode(const fs::path& in, const fs::path& out, const std::string& mode_name, bool report,
               const QuantizerFlags& qf, std::ostream& os) {
  if (mode_name != "strict" && mode_name != "lenient") {
    throw CLI::ValidationError("--mode", "expected strict or lenient");
  }
  const DecodeMode mode = mode_name == "strict" ? DecodeMode::kStrict : DecodeMode::kLenient;
  const auto q = qf.config();
  const auto lines = load_token_file(in);
  if (lines.empty()) throw Failure(in.string() + ": empty token file");

  std::vector<std::pair<fs::path, LaneGraph>> outputs;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    DecodeResult r;
    try {
      r = decode(lines[i], q, mode);
    } catch (const DecodeError& e) {
      throw Failure(in.string() + ":" + std::to_string(i + 1) + ": " + e.what());
    }
    if (report) {
      if (lines.size() > 1) os << "line=" << i + 1 << "\n";
      os << report_text(r.report);
    }
    const fs::path target = lines.size() == 1 ? out : out / numbered("graph", i, ".json");
    outputs.emplace_back(target, std::move(r.graph));
  }
  if (lines.size() > 1) fs::create_directories(out);
  for (const auto& [path, g] : outputs) save_graph(path, g);
  return kOk;
}

int cmd_roundtrip(const fs::path& in, const std::string& order_name, const QuantizerFlags& qf, std::ostream& os) {
  std::vector<fs::path> files = fs::is_directory(in) ? json_files(in) : std::vector<fs::path>{in};
  std::vector<LaneGraph> corpus;
  corpus.reserve(files.size());
  for (const auto& f : files) corpus.push_back(load_graph(f).graph);
  const EncodeOptions opts{qf.config(), RangeMode::kStrict};
  const auto outcomes = batch::roundtrip_corpus(corpus, ordering_from(order_name), opts);
  std::size_t failed = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].ok(0.5 * opts.quantizer.resolution)) continue;
    ++failed;
    os << "FAIL " << files[i].string() << ": "
       << (outcomes[i].error.empty() ? (outcomes[i].topology_exact ? "position error " +
                                                                         std::to_string(outcomes[i].max_position_error)
                                                                   : std::string("topology mismatch"))
                                     : outcomes[i].error)
       << "\n";
  }
  os << "graphs=" << outcomes.size() << " failed=" << failed << "\n";
  return failed == 0 ? kOk : kFailure;
}

int cmd_reseg(const fs::path& in, const fs::path& out, std::optional<double> interval, bool merge, std::ostream&) {
  if (interval && !(*interval > 0.0)) throw CLI::ValidationError("--interval", "must be positive");
  const GraphFile gf = load_graph(in);
  save_graph(out, resegment(gf.graph, {interval, merge}), gf.metadata_json);
  return kOk;
}

int cmd_eval(const fs::path& pred, const fs::path& gt, const MatchConfig& mc, const fs::path& out,
             const QuantizerFlags& qf, std::ostream& os) {
  check_config(mc);
  const auto q = qf.config();
  std::string text;
  if (fs::is_directory(pred) && fs::is_directory(gt)) {
    // Pair files by name; report the per-field mean over pairs.
    std::map<std::string, double> sum;
    std::size_t pairs = 0;
    for (const auto& p : json_files(gt)) {
      const fs::path candidate = pred / p.filename();
      if (!fs::exists(candidate)) throw Failure("no prediction for " + p.filename().string());
      for (const auto& [k, v] : flatten(evaluate(load_graph_or_tokens(candidate, q), load_graph(p).graph, mc))) {
        sum[k] += v;
      }
      ++pairs;
    }
    if (pairs == 0) throw Failure("no graph files in " + gt.string());
    std::ostringstream ss;
    ss << "pairs=" << pairs << "\n";
    char buf[64];
    for (const auto& [k, v] : sum) {
      std::snprintf(buf, sizeof buf, "%.6f", v / static_cast<double>(pairs));
      ss << k << "=" << buf << "\n";
    }
    text = ss.str();
  } else {
    text = to_key_value(evaluate(load_graph_or_tokens(pred, q), load_graph_or_tokens(gt, q), mc));
  }
  if (out.empty()) {
    os << text;
  } else {
    write_file_atomic(out, text);
  }
  return kOk;
}

int cmd_gen(const SynthParams& base, std::size_t count, const fs::path& out_dir, bool raster, double raster_res,
            const std::string& order_name, std::ostream& os) {
  check_params(base);
  const OrderingStrategy order = ordering_from(order_name);
  fs::create_directories(out_dir);
  std::vector<TokenSeq> lines(count);
  std::vector<LaneGraph> graphs(count);
  // Generation and encoding are per-seed pure; files are written in order.
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
    SynthParams p = base;
    p.seed = corpus_seed(base.seed, static_cast<std::uint64_t>(i));
    graphs[static_cast<std::size_t>(i)] = generate(p);
  }
  EncodeOptions opts;
  opts.quantizer.x_range = base.bev_x_range;
  opts.quantizer.y_range = base.bev_y_range;
  check_config(opts.quantizer);
  for (std::size_t i = 0; i < count; ++i) {
    const LaneGraph& g = graphs[i];
    save_graph(out_dir / numbered("graph", i, ".json"), g);
    lines[i] = encode(g, g.empty() ? std::vector<NodeId>{} : order_nodes(g, order), opts);
    if (raster) {
      std::ostringstream pgm;
      write_pgm(pgm, rasterize(g, raster_res, base.bev_x_range, base.bev_y_range));
      write_file_atomic(out_dir / numbered("raster", i, ".pgm"), pgm.str());
    }
  }
  save_token_file(out_dir / "tokens.txt", lines);
  os << "generated=" << count << " dir=" << out_dir.string() << "\n";
  return kOk;
}

int cmd_render(const fs::path& in, const fs::path& out, std::ostream&) {
  write_file_atomic(out, render_svg(load_graph(in).graph));
  return kOk;
}

int cmd_fuzz(std::uint64_t count, std::uint64_t seed, std::size_t max_len, std::ostream& os) {
  const FuzzStats s = batch::fuzz_decode(count, seed, max_len);
  os << "streams=" << s.streams << " tokens=" << s.tokens << " crashes=" << s.crashes
     << " clean=" << s.clean_streams << " diagnostics=" << s.diagnostics << "\n";
  return s.crashes == 0 ? kOk : kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lane graph <-> token sequence codec, re-segmentation and metrics", "seqgrow"};
  app.require_subcommand(1);

  std::string in, out_path, order_name = "dfs", mode_name = "strict";
  QuantizerFlags qf;

  auto* encode_cmd = app.add_subcommand("encode", "Graph file -> token file");
  bool clamp_nodes = false;
  encode_cmd->add_option("--in", in, "Graph file")->required();
  encode_cmd->add_option("--out", out_path, "Token file")->required();
  encode_cmd->add_option("--order", order_name, "dfs|bfs|coord|center")->capture_default_str()->check(kOrderNames);
  auto* strict_flag = encode_cmd->add_flag("--strict", "Reject node positions outside the BEV range (default)");
  encode_cmd->add_flag("--clamp", clamp_nodes, "Clamp node positions into the coordinate bins")
      ->excludes(strict_flag);
  qf.attach(encode_cmd);

  auto* decode_cmd = app.add_subcommand("decode", "Token file -> graph file(s)");
  bool report = false;
  decode_cmd->add_option("--in", in, "Token file")->required();
  decode_cmd->add_option("--out", out_path, "Graph file, or directory for multi-line token files")->required();
  decode_cmd->add_option("--mode", mode_name, "strict|lenient")
      ->capture_default_str()
      ->check(CLI::IsMember(std::vector<std::string>{"strict", "lenient"}));
  decode_cmd->add_flag("--report", report, "Print the decode report");
  qf.attach(decode_cmd);

  auto* roundtrip_cmd = app.add_subcommand("roundtrip", "Exit 0 iff encode/decode reproduces the graph(s)");
  roundtrip_cmd->add_option("--in", in, "Graph file or directory of graph files")->required();
  roundtrip_cmd->add_option("--order", order_name, "dfs|bfs|coord|center")->capture_default_str()->check(kOrderNames);
  qf.attach(roundtrip_cmd);

  auto* reseg_cmd = app.add_subcommand("reseg", "Split and/or merge centerlines");
  std::optional<double> interval;
  bool merge = false;
  reseg_cmd->add_option("--in", in, "Graph file")->required();
  reseg_cmd->add_option("--out", out_path, "Graph file")->required();
  reseg_cmd->add_option("--interval", interval, "Maximum centerline length in meters");
  reseg_cmd->add_flag("--merge", merge, "Merge continuous nodes");

  auto* eval_cmd = app.add_subcommand("eval", "Metric report for a prediction against ground truth");
  std::string pred, gt;
  MatchConfig mc;
  eval_cmd->add_option("--pred", pred, "Graph or token file (or directory)")->required();
  eval_cmd->add_option("--gt", gt, "Graph or token file (or directory)")->required();
  eval_cmd->add_option("--landmark-threshold", mc.landmark_threshold, "Meters")->capture_default_str();
  eval_cmd->add_option("--centerline-thresholds", mc.centerline_thresholds, "Meters, comma separated")
      ->delimiter(',');
  eval_cmd->add_option("--samples-per-edge", mc.samples_per_edge)->capture_default_str();
  eval_cmd->add_option("--out", out_path, "Report file (stdout when omitted)");
  qf.attach(eval_cmd);

  auto* gen_cmd = app.add_subcommand("gen", "Generate synthetic graphs, token lines and rasters");
  SynthParams sp;
  std::size_t count = 1;
  bool raster = false;
  double raster_res = 0.5;
  std::vector<double> bev_x{-48.0, 48.0}, bev_y{-30.0, 30.0};
  gen_cmd->add_option("--seed", sp.seed)->capture_default_str();
  gen_cmd->add_option("--count", count)->capture_default_str();
  gen_cmd->add_option("--node-budget", sp.node_budget)->capture_default_str();
  gen_cmd->add_option("--grid-pitch", sp.grid_pitch)->capture_default_str();
  gen_cmd->add_option("--p-fork", sp.p_fork)->capture_default_str();
  gen_cmd->add_option("--p-merge", sp.p_merge)->capture_default_str();
  gen_cmd->add_option("--p-loop", sp.p_loop)->capture_default_str();
  gen_cmd->add_option("--p-bidirectional", sp.p_bidirectional)->capture_default_str();
  gen_cmd->add_option("--jitter", sp.jitter)->capture_default_str();
  gen_cmd->add_option("--bend", sp.bend)->capture_default_str();
  gen_cmd->add_option("--x-range", bev_x)->delimiter(',')->expected(2);
  gen_cmd->add_option("--y-range", bev_y)->delimiter(',')->expected(2);
  gen_cmd->add_option("--order", order_name, "Ordering for tokens.txt")->capture_default_str()->check(kOrderNames);
  gen_cmd->add_option("--out-dir", out_path)->required();
  gen_cmd->add_flag("--raster", raster, "Also write PGM rasters");
  gen_cmd->add_option("--raster-resolution", raster_res)->capture_default_str();

  auto* render_cmd = app.add_subcommand("render", "Graph file -> SVG");
  render_cmd->add_option("--in", in)->required();
  render_cmd->add_option("--out", out_path)->required();

  auto* fuzz_cmd = app.add_subcommand("fuzz-decode", "Lenient-decode random token streams");
  std::uint64_t fuzz_count = 100000, fuzz_seed = 0;
  std::size_t fuzz_len = 96;
  fuzz_cmd->add_option("--count", fuzz_count)->capture_default_str();
  fuzz_cmd->add_option("--seed", fuzz_seed)->capture_default_str();
  fuzz_cmd->add_option("--max-len", fuzz_len)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*encode_cmd) return cmd_encode(in, out_path, order_name, qf, clamp_nodes, out);
    if (*decode_cmd) return cmd_decode(in, out_path, mode_name, report, qf, out);
    if (*roundtrip_cmd) return cmd_roundtrip(in, order_name, qf, out);
    if (*reseg_cmd) return cmd_reseg(in, out_path, interval, merge, out);
    if (*eval_cmd) return cmd_eval(pred, gt, mc, out_path, qf, out);
    if (*gen_cmd) {
      sp.bev_x_range = {bev_x[0], bev_x[1]};
      sp.bev_y_range = {bev_y[0], bev_y[1]};
      return cmd_gen(sp, count, out_path, raster, raster_res, order_name, out);
    }
    if (*render_cmd) return cmd_render(in, out_path, out);
    if (*fuzz_cmd) return cmd_fuzz(fuzz_count, fuzz_seed, fuzz_len, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace seqgrow::cli
