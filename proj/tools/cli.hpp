#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mapc/error.hpp"

namespace mapc::cli {

/// Process exit codes. Stable; documented in the README.
enum Exit : int {
  kOk = 0,              // success, SIMILAR, cross-check PASS
  kNegative = 1,        // NOT SIMILAR, cross-check FAIL
  kUsage = 2,           // bad command line
  kParse = 3,           // malformed input file or field name
  kNotAnnihilating = 4, // AB or BA nonzero
  kFieldMismatch = 5,   // files over different fields
  kSpec = 6,            // bad decomposition spec for gen
  kTooLarge = 7,        // oracle size limits
  kVerify = 8,          // --verify found a mismatch
  kIo = 9,              // file could not be read or written
  kInternal = 70,       // any other library failure
};

int exit_code(ErrorKind kind);

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mapc::cli
