#include "doctest.h"
#include "subheat/config.hpp"
#include "subheat/error.hpp"

using namespace subheat;

TEST_SUITE("config") {

TEST_CASE("minimal grid block fills defaults") {
    auto c = parse_config("[grid] n=1 L=16 M=256");
    CHECK(c.n == 1);
    CHECK(c.M == 256);
    CHECK(c.bc == Boundary::dirichlet);
    CHECK(c.alpha == 0.5);
    CHECK(c.beta == 1.0);
    CHECK(c.q_value() == 2.0);
    CHECK(c.N == std::vector<double>{0.0, 1.0, 2.0});
    CHECK(c.command == Command::selftest);
    validate(c);
}

TEST_CASE("alpha outside (0,1) is rejected") {
    CHECK_THROWS_AS(parse_config("[grid] n=1 L=16 M=256\n[fractional] alpha=1.5"), ConfigError);
    CHECK_THROWS_AS(parse_config("[grid] n=1 L=16 M=256\n[fractional] alpha=0"), ConfigError);
}

TEST_CASE("equiv needs gamma < min(2 alpha, 2 alpha beta)") {
    auto ok = parse_config("[grid] n=1 L=16 M=256\n[fractional] gamma=0.6 alpha=0.5 beta=1\n[run] command=equiv");
    validate(ok);
    CHECK_THROWS_AS(parse_config("[grid] n=1 L=16 M=256\n[fractional] gamma=0.6 alpha=0.2 beta=1\n[run] command=equiv"),
                    ConfigError);
    // the same gamma is fine for commands that do not use it
    auto other = parse_config("[grid] n=1 L=16 M=256\n[fractional] gamma=0.6 alpha=0.2 beta=1\n[run] command=kernels");
    validate(other);
}

TEST_CASE("structural errors") {
    CHECK_THROWS_AS(parse_config("[fractional] alpha=0.5"), ConfigError);
    CHECK_THROWS_AS(parse_config("[grid] n=1 L=16 M=256 colour=red"), ConfigError);
    CHECK_THROWS_AS(parse_config("[grid] n=1 L=16 M=256 M=128"), ConfigError);
    CHECK_THROWS_AS(parse_config("[grid] n=1 L=16 M=256\n[grid] alpha=0.5"), ConfigError);
    CHECK_THROWS_AS(parse_config("[grid] n=1 L=sixteen M=256"), ConfigError);
    CHECK_THROWS_AS(parse_config("[grid] n=1 L=16 M=256\n[bogus]"), ConfigError);
    CHECK_THROWS_AS(parse_config("[grid] n=1 L=16 M=256\n[run] command=dance"), ConfigError);
}

TEST_CASE("lists, comments and the canonical line") {
    auto c = parse_config("# comment\n[grid]\nn=1 L=8 M=64 bc=periodic\n[run] times=0.5,2 refine=32,64 estimates=E1,E9 seed=7");
    CHECK(c.bc == Boundary::periodic);
    CHECK(c.times == std::vector<double>{0.5, 2.0});
    CHECK(c.refine == std::vector<int>{32, 64});
    CHECK(c.estimates.size() == 2);
    CHECK(c.seed == 7);
    auto again = parse_config(c.describe());
    CHECK(again.describe() == c.describe());
}

TEST_CASE("shortest round-trip number formatting") {
    CHECK(format_double(0.25) == "0.25");
    CHECK(format_double(1e-10) == "1e-10");
    CHECK(std::stod(format_double(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("commands") {
    CHECK(parse_command("verify") == Command::verify);
    CHECK(std::string(command_name(Command::equiv)) == "equiv");
    CHECK_THROWS_AS(parse_command("nope"), ConfigError);
}

}
