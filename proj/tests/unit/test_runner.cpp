#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "subheat/error.hpp"
#include "subheat/runner.hpp"

using namespace subheat;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig small(Command c, const fs::path& out) {
    RunConfig cfg;
    cfg.M = 64;
    cfg.command = c;
    cfg.out = out.string();
    cfg.times = {0.5, 2.0};
    return cfg;
}

}  // namespace

TEST_SUITE("cli_runner") {

TEST_CASE("kernels writes the documented files") {
    auto dir = fs::temp_directory_path() / "subheat_unit_kernels";
    fs::remove_all(dir);
    auto rep = run(small(Command::kernels, dir));
    CHECK(rep.pass);
    CHECK(exit_code(rep) == 0);
    for (const char* f : {"heat_t0.5.csv", "frac_t2.csv", "rho.csv", "profile.csv", "kernel_checks.csv"}) CHECK(fs::exists(dir / f));
    std::ifstream in(dir / "heat_t0.5.csv");
    std::string comment, header;
    std::getline(in, comment);
    std::getline(in, header);
    CHECK(comment.rfind("# config:", 0) == 0);
    CHECK(header == "x_index,y_index,value");
    fs::remove_all(dir);
}

TEST_CASE("verify writes certificates with the documented columns") {
    auto dir = fs::temp_directory_path() / "subheat_unit_verify";
    fs::remove_all(dir);
    auto cfg = small(Command::verify, dir);
    cfg.estimates = {"E1", "E4"};
    cfg.N = {0.0};
    auto rep = run(cfg);
    CHECK(rep.pass);
    std::ifstream in(dir / "certificates.csv");
    std::string comment, header, row;
    std::getline(in, comment);
    std::getline(in, header);
    CHECK(header == "id,alpha,beta,N,delta,C_meas,argmax_x,argmax_y,argmax_t,refine_ratio,pass");
    int rows = 0;
    while (std::getline(in, row)) ++rows;
    CHECK(rows == 2);
    fs::remove_all(dir);
}

TEST_CASE("identical config and seed give byte-identical output") {
    auto a = fs::temp_directory_path() / "subheat_unit_det_a", b = fs::temp_directory_path() / "subheat_unit_det_b";
    fs::remove_all(a);
    fs::remove_all(b);
    run(small(Command::equiv, a));
    run(small(Command::equiv, b));
    int files = 0;
    for (const auto& e : fs::directory_iterator(a)) {
        ++files;
        CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
    }
    CHECK(files > 0);
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("bad potential propagates as a config error") {
    auto cfg = small(Command::kernels, fs::temp_directory_path() / "subheat_unit_bad");
    cfg.potential = "wobbly:3";
    CHECK_THROWS_AS(run(cfg), ConfigError);
}

TEST_CASE("exit code follows the checks") {
    RunReport r;
    CHECK(exit_code(r) == 0);
    r.pass = false;
    CHECK(exit_code(r) == 1);
}

}
