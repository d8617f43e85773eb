#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subheat/grid.hpp"

namespace subheat {

enum class Command { kernels, verify, spaces, equiv, selftest };

Command parse_command(const std::string& s);
const char* command_name(Command c);

/// Sectioned key=value configuration. Sections: [grid] n L M bc,
/// [potential] V q, [fractional] alpha beta gamma N delta,
/// [run] command seed out times refine estimates.
struct RunConfig {
    int n = 1;
    double L = 16.0;
    int M = 256;
    Boundary bc = Boundary::dirichlet;

    std::string potential = "constant:1";
    double q = 0.0;  // 0 means 2n

    double alpha = 0.5;
    double beta = 1.0;
    double gamma = 0.25;
    std::vector<double> N{0.0, 1.0, 2.0};
    double delta = 0.0;  // 0 selects each estimate's default

    Command command = Command::selftest;
    std::uint64_t seed = 42;
    std::string out = "out";
    std::vector<double> times{0.25, 1.0, 4.0};
    std::vector<int> refine;              // empty means {M/2, M}
    std::vector<std::string> estimates;   // empty means E1..E12

    double q_value() const { return q > 0.0 ? q : 2.0 * n; }
    /// Canonical one-line rendering used in CSV comment lines.
    std::string describe() const;
};

/// Throws ConfigError on malformed text, unknown keys, a missing [grid]
/// block or out-of-range values.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Range checks, including γ < min{2α, 2αβ} for the equiv command.
void validate(const RunConfig& cfg);

/// Shortest round-trip decimal rendering.
std::string format_double(double v);

}  // namespace subheat
