#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace emg {

/// Entry point behind the emg binary, separated out so tests can drive it.
/// args excludes the program name. Returns the process exit code:
/// 0 success, 1 rejected input or corpus mismatch, 2 usage or data errors.
int run_emg(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace emg
