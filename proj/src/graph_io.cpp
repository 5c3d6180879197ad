#include "seqgrow/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "seqgrow/error.hpp"

namespace seqgrow {

using nlohmann::json;

GraphFile parse_graph_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("graph file is not valid JSON: ") + e.what());
  }
  try {
    const int version = doc.at("schema_version").get<int>();
    if (version != kGraphSchemaVersion) {
      throw Error("unsupported graph schema_version " + std::to_string(version));
    }
    LaneGraph raw;
    for (const auto& n : doc.at("nodes")) {
      const auto id = n.at("id").get<std::int64_t>();
      if (id < 0 || id > std::numeric_limits<NodeId>::max()) throw Error("node id out of range");
      raw.nodes.push_back({static_cast<NodeId>(id), {n.at("x_m").get<double>(), n.at("y_m").get<double>()}, id});
    }
    for (const auto& e : doc.at("edges")) {
      const auto from = e.at("from").get<std::int64_t>();
      const auto to = e.at("to").get<std::int64_t>();
      if (from < 0 || to < 0 || from > std::numeric_limits<NodeId>::max() ||
          to > std::numeric_limits<NodeId>::max()) {
        throw Error("edge endpoint id out of range");
      }
      raw.edges.push_back({static_cast<NodeId>(from), static_cast<NodeId>(to),
                           {e.at("ctrl_x_m").get<double>(), e.at("ctrl_y_m").get<double>()}});
    }
    GraphFile out{canonicalize(raw), {}};
    require_valid(out.graph);
    if (doc.contains("metadata")) out.metadata_json = doc["metadata"].dump();
    return out;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed graph file: ") + e.what());
  }
}

std::string to_graph_json(const LaneGraph& g, std::string_view metadata_json) {
  // Original ids survive only when every node still carries a distinct one;
  // otherwise dense ids are written.
  std::set<std::int64_t> labels;
  bool use_labels = true;
  for (const Node& n : g.nodes) {
    if (!n.label || !labels.insert(*n.label).second) {
      use_labels = false;
      break;
    }
  }
  auto external_id = [&g, use_labels](NodeId id) -> std::int64_t {
    return use_labels ? *g.nodes.at(id).label : static_cast<std::int64_t>(id);
  };
  json doc;
  doc["schema_version"] = kGraphSchemaVersion;
  doc["nodes"] = json::array();
  for (const Node& n : g.nodes) {
    doc["nodes"].push_back({{"id", external_id(n.id)}, {"x_m", n.pos.x}, {"y_m", n.pos.y}});
  }
  doc["edges"] = json::array();
  for (const Edge& e : g.edges) {
    doc["edges"].push_back({{"from", external_id(e.from)},
                            {"to", external_id(e.to)},
                            {"ctrl_x_m", e.ctrl.x},
                            {"ctrl_y_m", e.ctrl.y}});
  }
  if (!metadata_json.empty()) doc["metadata"] = json::parse(metadata_json);
  return doc.dump(2) + "\n";
}

GraphFile load_graph(const std::filesystem::path& path) {
  try {
    return parse_graph_json(read_file(path));
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void save_graph(const std::filesystem::path& path, const LaneGraph& g, std::string_view metadata_json) {
  write_file_atomic(path, to_graph_json(g, metadata_json));
}

TokenSeq parse_token_line(std::string_view line) {
  TokenSeq out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    token::Value v = 0;
    const auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, v);
    if (ec != std::errc() || ptr != line.data() + j) {
      throw Error("not a base-10 token: '" + std::string(line.substr(i, j - i)) + "'");
    }
    out.push_back(v);
    i = j;
  }
  return out;
}

std::string format_token_line(std::span<const token::Value> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += std::to_string(tokens[i]);
  }
  return out;
}

std::vector<TokenSeq> load_token_file(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::vector<TokenSeq> lines;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    try {
      lines.push_back(parse_token_line(line));
    } catch (const Error& e) {
      throw Error(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return lines;
}

void save_token_file(const std::filesystem::path& path, const std::vector<TokenSeq>& lines) {
  std::string text;
  for (const auto& l : lines) {
    text += format_token_line(l);
    text.push_back('\n');
  }
  write_file_atomic(path, text);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace seqgrow
