#pragma once

#include <string>
#include <vector>

#include "subheat/config.hpp"

namespace subheat {

struct CheckRow {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    std::string note;
};

struct RunReport {
    Command command = Command::selftest;
    bool pass = true;
    std::vector<CheckRow> checks;
    std::vector<std::string> files;
};

/// Executes the configured command and writes CSV files under cfg.out.
/// ConfigError and NumericalError propagate to the caller.
RunReport run(const RunConfig& cfg);

/// 0 when every check passed, 1 otherwise.
int exit_code(const RunReport& report);

}  // namespace subheat
