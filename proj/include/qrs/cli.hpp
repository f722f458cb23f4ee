/// @file cli.hpp
/// @brief Command-line entry point, callable in-process for tests.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qrs {

/// Runs the CLI on pre-split arguments (program name excluded).
/// Exit codes: 0 = success / identity holds, 1 = identity or suite failure,
/// 2 = usage or engine error.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace qrs
