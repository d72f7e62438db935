#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hankel::cli {

/// Exit codes of every subcommand.
enum Exit : int {
  kOk = 0,            // PSD / success
  kNotPsd = 1,
  kInputError = 2,    // usage or malformed input
  kVerifyFailed = 3,  // certificate, cross-check or sign-fact failure
  kUncovered = 4,
};

/// Runs `hankel-psd <subcommand> ...` with args excluding the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hankel::cli
