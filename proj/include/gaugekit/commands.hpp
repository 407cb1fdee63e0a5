#pragma once

#include <string>
#include <vector>

#include "gaugekit/bundle.hpp"

namespace gaugekit {

enum ExitCode : int { kExitPass = 0, kExitPropertyFailure = 1, kExitInputError = 2 };

struct Report {
    int exit_code = kExitPass;
    std::string text;  // human-readable rendering
    json body;         // machine-readable rendering, no timestamps
};

// Runs one command line (without the program name), e.g.
// {"equiv", "grid.json", "--eps-grid", "2,1,0.5"}. Never throws: input errors
// become exit code 2 and property failures exit code 1, each with a message
// and, for failures, a witness. When --out is given the JSON body is also
// written there.
Report run_command(const std::vector<std::string>& args);

}  // namespace gaugekit
