#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "seqgrow/graph_io.hpp"

using namespace seqgrow;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("seqgrow_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("cli: gen, roundtrip, encode, decode, eval") {
  const fs::path dir = scratch_dir("flow");
  const fs::path gen = dir / "gen";
  Run r = run({"gen", "--seed", "4", "--count", "12", "--node-budget", "20", "--p-loop", "0.5", "--out-dir",
               gen.string(), "--raster"});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(gen / "graph_000000.json"));
  CHECK(fs::exists(gen / "raster_000011.pgm"));
  CHECK(load_token_file(gen / "tokens.txt").size() == 12);

  r = run({"roundtrip", "--in", gen.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("graphs=12 failed=0") != std::string::npos);

  const fs::path g0 = gen / "graph_000000.json";
  r = run({"eval", "--pred", g0.string(), "--gt", g0.string()});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    CAPTURE(line);
    CHECK(line.ends_with("=1.000000"));
    ++count;
  }
  CHECK(count == 19);

  const fs::path tok = dir / "t.txt";
  const fs::path back = dir / "back.json";
  const fs::path tok2 = dir / "t2.txt";
  REQUIRE(run({"encode", "--in", g0.string(), "--out", tok.string()}).code == 0);
  r = run({"decode", "--in", tok.string(), "--out", back.string(), "--mode", "strict", "--report"});
  REQUIRE(r.code == 0);
  REQUIRE(run({"encode", "--in", back.string(), "--out", tok2.string()}).code == 0);
  CHECK(read_file(tok) == read_file(tok2));

  // Token input on one side of eval is decoded first.
  r = run({"eval", "--pred", tok.string(), "--gt", back.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("landmark.f1=1.000000") != std::string::npos);

  r = run({"reseg", "--in", g0.string(), "--out", (dir / "r.json").string(), "--interval", "5", "--merge"});
  CHECK(r.code == 0);
  r = run({"render", "--in", g0.string(), "--out", (dir / "g.svg").string()});
  CHECK(r.code == 0);
  const std::string svg = read_file(dir / "g.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find(" Q ") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("cli: errors and exit codes") {
  const fs::path dir = scratch_dir("errors");
  CHECK(run({}).code == 2);
  CHECK(run({"encode"}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"encode", "--in", (dir / "missing.json").string(), "--out", (dir / "x").string()}).code == 1);
  CHECK(run({"encode", "--in", "a", "--out", "b", "--order", "zigzag"}).code == 2);

  write_file_atomic(dir / "bad.txt", "574 10 20 570 572 573\n");
  const Run r = run({"decode", "--in", (dir / "bad.txt").string(), "--out", (dir / "o.json").string()});
  CHECK(r.code == 1);
  CHECK(r.err.starts_with("error: "));
  CHECK(run({"decode", "--in", (dir / "bad.txt").string(), "--out", (dir / "o.json").string(), "--mode", "lenient"})
            .code == 0);
  fs::remove_all(dir);
}

TEST_CASE("cli: fuzz-decode") {
  const Run r = run({"fuzz-decode", "--count", "2000", "--seed", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("crashes=0") != std::string::npos);
}
