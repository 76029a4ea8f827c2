#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace jlpath {

enum ExitCode : int {
  ExitOk = 0,
  ExitDomain = 1,  // domain errors, failed checks and usage errors
  ExitBound = 2,   // a configured bound was hit before a decision
};

// Runs the command line (args excludes the program name).  Output goes to
// `out` unless --output is given; diagnostics go to `err` as JSON.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// 64-bit FNV-1a digest as 16 hex digits, used in manifests.
std::string digest(const std::string& text);

}  // namespace jlpath
