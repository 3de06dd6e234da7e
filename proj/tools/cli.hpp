#pragma once

#include <iosfwd>

namespace obtk::cli {

/// Parses argv, runs one subcommand and writes its table to `out` (or the
/// --out file) and its summary to `err`. Returns 0 on success or pass, 2 when
/// an experiment ran with violations, 1 on usage or spec errors.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace obtk::cli
