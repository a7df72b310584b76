#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "mirrorphase/dissipator.hpp"
#include "mirrorphase/dynamics.hpp"

#ifndef MIRRORPHASE_CLI_PATH
#error "MIRRORPHASE_CLI_PATH must point at the built binary"
#endif

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

CmdResult run_cli(const std::string& args) {
    CmdResult r;
    const std::string cmd =
        std::string(MIRRORPHASE_CLI_PATH) + " " + args + " 2>cli_stderr.tmp";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream es("cli_stderr.tmp");
    std::stringstream ss;
    ss << es.rdbuf();
    r.err = ss.str();
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    return lines;
}

std::vector<double> csv_row(const std::string& line) {
    std::vector<double> vals;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) vals.push_back(std::strtod(tok.c_str(), nullptr));
    return vals;
}

double record_value(const std::string& text, const std::string& key) {
    const auto pos = text.find(key + " = ");
    REQUIRE(pos != std::string::npos);
    return std::strtod(text.c_str() + pos + key.size() + 3, nullptr);
}

constexpr double pi = std::numbers::pi;

}  // namespace

TEST_CASE("help and unknown subcommands") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("frobnicate").exit_code == 1);
    CHECK(run_cli("").exit_code == 1);
}

TEST_CASE("modfuncs: header, limits, determinism") {
    const std::string args =
        "modfuncs --z-min 1e-9 --z-max 1e6 --points 7 --scale log "
        "--out-path cli_modfuncs.csv";
    CHECK(run_cli(args).exit_code == 0);
    const std::string body = slurp("cli_modfuncs.csv");
    const auto lines = data_lines(body);
    REQUIRE(lines.size() == 8);  // header + 7 rows
    CHECK(lines[0] == "z_m,u,fx,fz");

    // smallest grid point: u deep below the series threshold, fz -> -1
    const auto first = csv_row(lines[1]);
    REQUIRE(first.size() == 4);
    CHECK(first[1] < 1e-2);
    CHECK(std::abs(first[3] + 1.0) <= 1e-4);
    CHECK(std::abs(first[2] - 1.0) <= 1e-4);

    // z = 1e6 m row: both modulation functions gone within 1e-6
    const auto last = csv_row(lines.back());
    CHECK(last[0] == 1e6);
    CHECK(std::abs(last[2]) <= 1e-6);
    CHECK(std::abs(last[3]) <= 1e-6);

    // byte-identical rerun
    CHECK(run_cli(
              "modfuncs --z-min 1e-9 --z-max 1e6 --points 7 --scale log "
              "--out-path cli_modfuncs2.csv")
              .exit_code == 0);
    CHECK(slurp("cli_modfuncs2.csv") == body);
}

TEST_CASE("evolve: initial purity, header, analytic endpoint") {
    CHECK(run_cli("evolve --out-path cli_evolve.csv").exit_code == 0);
    const auto lines = data_lines(slurp("cli_evolve.csv"));
    REQUIRE(lines.size() >= 12);
    CHECK(lines[0] == "phi,ee,re_eg,im_eg,gg,purity");

    const auto first = csv_row(lines[1]);
    REQUIRE(first.size() == 6);
    CHECK(first[0] == 0.0);
    CHECK(first[1] == doctest::Approx(0.5).epsilon(1e-12));  // cos^2(pi/4)
    CHECK(std::abs(first[5] - 1.0) <= 1e-12);

    // endpoint must match the closed solution (defaults: one cycle, z = 1e-5)
    mirrorphase::AtomParams p;
    p.omega0 = 3e9;
    p.gamma_ratio = 1e-6;
    p.theta = 0.5 * pi;
    p.alpha = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    const auto coeffs = mirrorphase::build_coeffs(
        p, mirrorphase::Geometry::from_distance(1e-5, p.omega0));
    const auto last = csv_row(lines.back());
    const auto ref = mirrorphase::rho_analytic(last[0], p, coeffs);
    CHECK(std::abs(last[1] - ref.ee) <= 1e-8);
    CHECK(std::abs(last[4] - ref.gg) <= 1e-8);
}

TEST_CASE("phase: record values and nonradiative line") {
    // far from the plane the environment part approaches -pi^2 gamma_ratio
    const CmdResult far = run_cli("phase --cycles 1 --z-m 1e5");
    CHECK(far.exit_code == 0);
    CHECK(record_value(far.out, "environment_rad") ==
          doctest::Approx(-pi * pi * 1e-6).epsilon(1e-3));
    CHECK(record_value(far.out, "first_order_environment_rad") ==
          doctest::Approx(-pi * pi * 1e-6).epsilon(1e-3));

    // theta = 0: no phase at all
    const CmdResult zero = run_cli("phase --cycles 1 --theta-rad 0");
    CHECK(zero.exit_code == 0);
    CHECK(record_value(zero.out, "total_rad") == 0.0);

    // Fig. 1 defaults over T = 1e-3 s: large but finite, no overflow
    const CmdResult fig = run_cli("phase");
    CHECK(fig.exit_code == 0);
    const double total = record_value(fig.out, "total_rad");
    CHECK(std::isfinite(total));
    CHECK(total < -1e5);

    const CmdResult beta = run_cli("phase --beta-cm3 1e-18 --z-m 1e-6 --cycles 1");
    CHECK(beta.exit_code == 0);
    CHECK(record_value(beta.out, "nonradiative_ratio") ==
          doctest::Approx(1e-6).epsilon(1e-12));
}

TEST_CASE("sweep: zero row at z0, monotone column, byte-identical rerun") {
    CHECK(run_cli("sweep --out-path cli_sweep.csv").exit_code == 0);
    const std::string body = slurp("cli_sweep.csv");
    const auto lines = data_lines(body);
    REQUIRE(lines.size() == 61);
    CHECK(lines[0] == "z_m,delta_rad");

    const auto first = csv_row(lines[1]);
    CHECK(first[0] == 1e-6);  // grid contains z0
    CHECK(first[1] == 0.0);

    double prev = -1.0;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto row = csv_row(lines[k]);
        CHECK(row[1] >= prev);
        prev = row[1];
    }

    CHECK(run_cli("sweep --out-path cli_sweep2.csv").exit_code == 0);
    CHECK(slurp("cli_sweep2.csv") == body);
}

TEST_CASE("verify: green by default, red under the injection hook") {
    const CmdResult ok = run_cli("verify");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("FAIL") == std::string::npos);
    CHECK(ok.out.find("analytic_vs_rk4_entrywise") != std::string::npos);
    CHECK(ok.out.find("residual=") != std::string::npos);
    CHECK(ok.out.find("threshold=") != std::string::npos);

    const CmdResult bad = run_cli("verify --inject-perturbation 1.0");
    CHECK(bad.exit_code == 2);
    CHECK(bad.out.find("FAIL") != std::string::npos);
}

TEST_CASE("configuration errors exit with code 1") {
    CHECK(run_cli("sweep --points 0").exit_code == 1);
    CHECK(run_cli("sweep --no-such-flag 1").exit_code == 1);
    CHECK(run_cli("phase --time-s 1e-3 --cycles 1").exit_code == 1);
    CHECK(run_cli("phase --theta-rad 9").exit_code == 1);
    CHECK(run_cli("phase --gamma-ratio 0.5").exit_code == 1);
    CHECK(run_cli("evolve --steps 3").exit_code == 1);
    CHECK(run_cli("sweep --z-min 2e-4 --z-max 1e-4").exit_code == 1);
    CHECK(run_cli("sweep --out-path /nonexistent-dir/x.csv").exit_code == 1);
}

TEST_CASE("numerical failures exit with code 2") {
    // deliberately unstable step size blows past the positivity guard
    CHECK(run_cli("evolve --cycles 100000 --steps 10 --out-path cli_junk.csv")
              .exit_code == 2);
}

TEST_CASE("config file keys, flag override, alpha renormalization") {
    {
        std::ofstream cfg("cli_case.cfg");
        cfg << "# sweep configuration\n"
            << "z_min = 1e-6\n"
            << "z_max = 1e-5\n"
            << "points = 3\n"
            << "scale = linear\n";
    }
    CHECK(run_cli("modfuncs --config cli_case.cfg --out-path cli_cfg_a.csv")
              .exit_code == 0);
    CHECK(data_lines(slurp("cli_cfg_a.csv")).size() == 4);  // header + 3

    // flags override file values
    CHECK(run_cli("modfuncs --config cli_case.cfg --points 2 --out-path cli_cfg_b.csv")
              .exit_code == 0);
    CHECK(data_lines(slurp("cli_cfg_b.csv")).size() == 3);

    {
        std::ofstream cfg("cli_bad.cfg");
        cfg << "no_such_key = 1\n";
    }
    CHECK(run_cli("modfuncs --config cli_bad.cfg").exit_code == 1);

    const CmdResult renorm = run_cli("phase --cycles 1 --alpha 1,1,2");
    CHECK(renorm.exit_code == 0);
    CHECK(renorm.err.find("renormaliz") != std::string::npos);
}
