#pragma once

// Command-line front end. Each subcommand reads a scenario config, applies
// flag overrides, validates the layout and writes its outputs under --out.

#include <ostream>
#include <string>
#include <vector>

namespace vanatta::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConstraint = 1;  // validation or model constraint failed
inline constexpr int kExitIo = 2;          // file, config or command-line error

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vanatta::cli
