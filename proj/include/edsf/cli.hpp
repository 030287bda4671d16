#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace edsf::cli {

// Runs one CLI invocation. args excludes the program name. Exit codes:
// 0 success, 1 usage error, 2 domain error, 3 a theorem/fixture check failed.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// head...tail (N digits) rendering for big integers in human output; numbers
// of at most 40 digits are printed in full.
std::string human_int(const std::string& decimal);

}  // namespace edsf::cli
