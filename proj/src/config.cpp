#include "subheat/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "subheat/error.hpp"
#include "subheat/estimates.hpp"
#include "subheat/potential.hpp"

namespace subheat {

namespace {

const std::map<std::string, std::set<std::string>> kSections = {
    {"grid", {"n", "L", "M", "bc"}},
    {"potential", {"V", "q"}},
    {"fractional", {"alpha", "beta", "gamma", "N", "delta"}},
    {"run", {"command", "seed", "out", "times", "refine", "estimates"}},
};

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) fail_config("parse_config", key + ": not a number: '" + v + "'");
    return out;
}

long long to_int(const std::string& key, const std::string& v) {
    long long out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) fail_config("parse_config", key + ": not an integer: '" + v + "'");
    return out;
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(v);
    while (std::getline(is, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

}  // namespace

Command parse_command(const std::string& s) {
    if (s == "kernels") return Command::kernels;
    if (s == "verify") return Command::verify;
    if (s == "spaces") return Command::spaces;
    if (s == "equiv") return Command::equiv;
    if (s == "selftest") return Command::selftest;
    fail_config("parse_command", "unknown command '" + s + "'");
}

const char* command_name(Command c) {
    switch (c) {
        case Command::kernels: return "kernels";
        case Command::verify: return "verify";
        case Command::spaces: return "spaces";
        case Command::equiv: return "equiv";
        case Command::selftest: return "selftest";
    }
    return "?";
}

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) return "nan";
    return std::string(buf, p);
}

std::string RunConfig::describe() const {
    std::ostringstream os;
    auto list = [](const auto& xs) {
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i) s += ',';
            if constexpr (std::is_same_v<std::decay_t<decltype(xs[i])>, std::string>)
                s += xs[i];
            else
                s += format_double(static_cast<double>(xs[i]));
        }
        return s;
    };
    os << "[grid] n=" << n << " L=" << format_double(L) << " M=" << M
       << " bc=" << (bc == Boundary::dirichlet ? "dirichlet" : "periodic") << " [potential] V=" << potential
       << " q=" << format_double(q_value()) << " [fractional] alpha=" << format_double(alpha)
       << " beta=" << format_double(beta) << " gamma=" << format_double(gamma) << " N=" << list(N)
       << " delta=" << format_double(delta) << " [run] command=" << command_name(command) << " seed=" << seed
       << " times=" << list(times) << " refine=" << list(refine) << " estimates=" << list(estimates);
    return os.str();
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::string section;
    std::set<std::string> seen_sections, seen_keys;
    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream tokens(line);
        std::string tok;
        while (tokens >> tok) {
            const std::string where = "line " + std::to_string(lineno);
            if (tok.front() == '[') {
                if (tok.back() != ']') fail_config("parse_config", where + ": malformed section '" + tok + "'");
                section = tok.substr(1, tok.size() - 2);
                if (!kSections.count(section)) fail_config("parse_config", where + ": unknown section [" + section + "]");
                seen_sections.insert(section);
                continue;
            }
            auto eq = tok.find('=');
            if (eq == std::string::npos || eq == 0 || eq + 1 == tok.size())
                fail_config("parse_config", where + ": expected key=value, got '" + tok + "'");
            std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            std::string owner;
            for (const auto& [name, keys] : kSections)
                if (keys.count(key)) owner = name;
            if (owner.empty()) fail_config("parse_config", where + ": unknown key '" + key + "'");
            if (!section.empty() && owner != section)
                fail_config("parse_config", where + ": key '" + key + "' does not belong to [" + section + "]");
            if (!seen_keys.insert(key).second) fail_config("parse_config", where + ": duplicate key '" + key + "'");
            if (owner == "grid") seen_sections.insert("grid");

            if (key == "n") cfg.n = static_cast<int>(to_int(key, val));
            else if (key == "L") cfg.L = to_double(key, val);
            else if (key == "M") cfg.M = static_cast<int>(to_int(key, val));
            else if (key == "bc") {
                if (val == "dirichlet") cfg.bc = Boundary::dirichlet;
                else if (val == "periodic") cfg.bc = Boundary::periodic;
                else fail_config("parse_config", "bc must be dirichlet or periodic");
            } else if (key == "V") {
                parse_potential(val);
                cfg.potential = val;
            } else if (key == "q") cfg.q = to_double(key, val);
            else if (key == "alpha") cfg.alpha = to_double(key, val);
            else if (key == "beta") cfg.beta = to_double(key, val);
            else if (key == "gamma") cfg.gamma = to_double(key, val);
            else if (key == "N") {
                cfg.N.clear();
                for (const auto& s : split_list(val)) cfg.N.push_back(to_double(key, s));
            } else if (key == "delta") cfg.delta = to_double(key, val);
            else if (key == "command") cfg.command = parse_command(val);
            else if (key == "seed") {
                unsigned long long s = 0;
                auto [p, ec] = std::from_chars(val.data(), val.data() + val.size(), s);
                if (ec != std::errc() || p != val.data() + val.size()) fail_config("parse_config", "seed must be a u64");
                cfg.seed = s;
            } else if (key == "out") cfg.out = val;
            else if (key == "times") {
                cfg.times.clear();
                for (const auto& s : split_list(val)) cfg.times.push_back(to_double(key, s));
            } else if (key == "refine") {
                cfg.refine.clear();
                for (const auto& s : split_list(val)) cfg.refine.push_back(static_cast<int>(to_int(key, s)));
            } else if (key == "estimates") {
                cfg.estimates.clear();
                for (const auto& s : split_list(val)) {
                    parse_estimate(s);
                    cfg.estimates.push_back(s);
                }
            }
        }
    }
    if (!seen_sections.count("grid")) fail_config("parse_config", "missing [grid] block");
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail_config("load_config", "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void validate(const RunConfig& cfg) {
    if (cfg.n < 1 || cfg.n > 3) fail_config("config", "n must be 1, 2 or 3");
    if (!(cfg.L > 0.0)) fail_config("config", "L must be positive");
    if (cfg.M < 8 || cfg.M % 2) fail_config("config", "M must be even and >= 8");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) fail_config("config", "alpha must lie in (0,1)");
    if (!(cfg.beta > 0.0)) fail_config("config", "beta must be positive");
    if (!(cfg.gamma > 0.0 && cfg.gamma <= 1.0)) fail_config("config", "gamma must lie in (0,1]");
    if (cfg.q != 0.0 && !(cfg.q > 1.0)) fail_config("config", "q must exceed 1");
    if (cfg.delta < 0.0) fail_config("config", "delta must be nonnegative");
    if (cfg.N.empty()) fail_config("config", "N list is empty");
    for (double N : cfg.N)
        if (!(N >= 0.0)) fail_config("config", "N must be nonnegative");
    for (double t : cfg.times)
        if (!(t > 0.0)) fail_config("config", "times must be positive");
    for (int m : cfg.refine)
        if (m < 8 || m % 2) fail_config("config", "refine grids must be even and >= 8");
    if (cfg.command == Command::equiv && !(cfg.gamma < std::min(2.0 * cfg.alpha, 2.0 * cfg.alpha * cfg.beta)))
        fail_config("config", "equiv needs gamma < min{2 alpha, 2 alpha beta}");
}

}  // namespace subheat
