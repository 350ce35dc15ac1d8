#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qadio/fock.hpp"

namespace qadio::cli {

inline constexpr int kExitDecided = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUndecided = 2;

/// Runs the command line `args` (without the program name). Reports go to
/// `out` unless redirected to a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "2", "2+0i", "-1.5-0.25i", "3i", "i". Throws DomainError.
Complex parse_complex(const std::string& text);

}  // namespace qadio::cli
