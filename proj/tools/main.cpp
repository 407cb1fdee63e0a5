#include <iostream>
#include <string>
#include <vector>

#include "gaugekit/commands.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    const auto report = gaugekit::run_command(args);
    (report.exit_code == gaugekit::kExitInputError ? std::cerr : std::cout) << report.text;
    return report.exit_code;
}
