#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stylemark::cli {

enum ExitCode : int { kOk = 0, kIoError = 1, kUsageError = 2 };

// Runs one command line; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stylemark::cli
