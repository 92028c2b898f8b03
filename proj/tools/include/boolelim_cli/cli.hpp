#pragma once

// Command-line front end. run_cli is the whole program minus process
// plumbing, so tests drive it with string streams.

#include <iosfwd>
#include <string>
#include <vector>

namespace boolelim::cli {

/// Exit statuses; stable and documented in the README.
enum Exit : int {
  ok = 0,
  failure = 1,
  parse_error = 2,
  incompatible = 3,
  size_limit = 4,
  unresolved = 5,
  shape_unsupported = 6,
  disagreement = 7,
};

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace boolelim::cli
