// subheat <command> --config <path> [--out <dir>] [--seed <u64>]
#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "subheat/config.hpp"
#include "subheat/error.hpp"
#include "subheat/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Fractional heat semigroups of discrete Schrodinger operators"};
    std::string command, config_path, out;
    std::uint64_t seed = 0;
    app.add_option("command", command, "kernels | verify | spaces | equiv | selftest")->required();
    app.add_option("--config", config_path, "sectioned key=value file")->required();
    auto* out_opt = app.add_option("--out", out, "output directory");
    auto* seed_opt = app.add_option("--seed", seed, "seed for random suites");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        auto cfg = subheat::load_config(config_path);
        cfg.command = subheat::parse_command(command);
        if (*out_opt) cfg.out = out;
        if (*seed_opt) cfg.seed = seed;
        subheat::validate(cfg);
        auto report = subheat::run(cfg);
        for (const auto& c : report.checks)
            std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " value=" << subheat::format_double(c.value)
                      << (c.note.empty() ? "" : " (" + c.note + ")") << '\n';
        for (const auto& f : report.files) std::cout << "wrote " << f << '\n';
        std::cout << subheat::command_name(report.command) << ": " << (report.pass ? "pass" : "fail") << '\n';
        return subheat::exit_code(report);
    } catch (const subheat::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const subheat::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
