#pragma once

// Interchange formats.
//
// GraphFile (JSON):
//   {"schema_version": 1,
//    "nodes": [{"id": 0, "x_m": 1.5, "y_m": -2.0}, ...],
//    "edges": [{"from": 0, "to": 1, "ctrl_x_m": 3.0, "ctrl_y_m": 0.0}, ...],
//    "metadata": {...}}                       (optional, free-form)
// Node ids may be any unique integers; they are canonicalized on load and
// the original id is kept as the node label, which is written back on save.
//
// TokenFile: one sequence per line, space-separated base-10 integers.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "seqgrow/lane_graph.hpp"
#include "seqgrow/sequence_codec.hpp"

namespace seqgrow {

inline constexpr int kGraphSchemaVersion = 1;

struct GraphFile {
  LaneGraph graph;
  // Raw JSON text of the metadata object, empty when absent.
  std::string metadata_json;
};

// Throws Error on malformed JSON, an unsupported schema_version or a graph
// that fails validation.
GraphFile parse_graph_json(std::string_view text);
std::string to_graph_json(const LaneGraph& g, std::string_view metadata_json = {});

GraphFile load_graph(const std::filesystem::path& path);
void save_graph(const std::filesystem::path& path, const LaneGraph& g, std::string_view metadata_json = {});

// Throws Error on a non-integer field.
TokenSeq parse_token_line(std::string_view line);
std::string format_token_line(std::span<const token::Value> tokens);

std::vector<TokenSeq> load_token_file(const std::filesystem::path& path);
void save_token_file(const std::filesystem::path& path, const std::vector<TokenSeq>& lines);

std::string read_file(const std::filesystem::path& path);
// Writes to a sibling temporary file and renames it over path, so readers
// never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace seqgrow
