#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace seqgrow::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,  // validation, decode, round-trip or fuzz failure
  kUsage = 2,
};

// Runs the `seqgrow` command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seqgrow::cli
