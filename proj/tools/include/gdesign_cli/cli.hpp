#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gdesign/decomp.hpp"

namespace gdesign::cli {

enum ExitStatus : int { kOk = 0, kVerificationFailed = 1, kUnsupported = 2, kUsage = 3 };

/// Header comments, then one `<gid>: z1 .. z6` line per block in sorted order.
std::string write_design(const Design& design);
/// Reads a design file back; the target is K_order from the header.
Design parse_design(std::string_view text, const std::string& source_name = "<design>");

/// Runs one command line (args exclude the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gdesign::cli
