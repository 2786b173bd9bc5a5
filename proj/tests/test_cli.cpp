#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(CONSTFORGE_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
        res.out.append(buf.data(), n);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

int count_lines(const std::string& s) {
    int lines = 0;
    for (char c : s)
        if (c == '\n') ++lines;
    return lines;
}

} // namespace

TEST_CASE("list covers the catalog and flags slow baselines") {
    auto res = run_cli("list");
    CHECK(res.exit_code == 0);
    for (const char* id : {"S1.1", "S1.16", "S-S6", "B-GOSPER", "B-LEIBNIZ"})
        CHECK(res.out.find(id) != std::string::npos);
    CHECK(res.out.find("[profile-only]") != std::string::npos);
    CHECK(count_lines(res.out) == 27);
}

TEST_CASE("verify exits 0 on pass and 2 on unknown ids") {
    CHECK(run_cli("verify --id S1.11 --digits 30").exit_code == 0);
    auto bad = run_cli("verify --id NOPE --digits 30");
    CHECK(bad.exit_code == 2);
    CHECK(bad.out.find("unknown catalog id") != std::string::npos);
}

TEST_CASE("domain and boundary arguments exit 2 with an explanation") {
    auto dom = run_cli("gf --family GF1.10 --x 1/2 --digits 30");
    CHECK(dom.exit_code == 2);
    CHECK(dom.out.find("x >= 1 required") != std::string::npos);

    auto boundary = run_cli("gf --family GF1.4 --x 4 --digits 30");
    CHECK(boundary.exit_code == 2);
    CHECK(boundary.out.find("boundary") != std::string::npos);

    auto badx = run_cli("gf --family GF1.4 --x nonsense --digits 30");
    CHECK(badx.exit_code == 2);

    auto badfam = run_cli("gf --family GF9.9 --x 1 --digits 30");
    CHECK(badfam.exit_code == 2);

    CHECK(run_cli("verify --id S1.1 --digits 5").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
}

TEST_CASE("json mode emits one object per line") {
    auto res = run_cli("cong --id CS6 --pmin 5 --pmax 20 --json");
    CHECK(res.exit_code == 0);
    CHECK(count_lines(res.out) == 6); // primes 5, 7, 11, 13, 17, 19
    CHECK(res.out.find("{\"id\":\"CS6\",\"p\":5,") == 0);
    CHECK(res.out.find("\"status\":\"pass\"") != std::string::npos);
}

TEST_CASE("verify-all JSON is identical across --jobs (modulo timings)") {
    auto strip_ms = [](const std::string& s) {
        std::string out;
        std::size_t start = 0;
        while (true) {
            std::size_t p = s.find(",\"ms\":", start);
            if (p == std::string::npos) {
                out += s.substr(start);
                break;
            }
            out += s.substr(start, p - start);
            start = s.find('}', p);
        }
        return out;
    };
    auto a = run_cli("verify-all --digits 30 --json --jobs 1");
    auto b = run_cli("verify-all --digits 30 --json --jobs 3");
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(strip_ms(a.out) == strip_ms(b.out));
    CHECK(count_lines(a.out) == 23);
}

TEST_CASE("cong sweeps are byte-identical across jobs") {
    auto a = run_cli("cong --id C2a --pmin 5 --pmax 200 --json --jobs 1");
    auto b = run_cli("cong --id C2a --pmin 5 --pmax 200 --json --jobs 4");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("ps-verify and prod-coeff run and exit clean") {
    auto ps = run_cli("ps-verify --order 21");
    CHECK(ps.exit_code == 0);
    CHECK(ps.out.find("pass") != std::string::npos);

    auto pc = run_cli("prod-coeff --kmax 20 --json");
    CHECK(pc.exit_code == 0);
    CHECK(pc.out.find("\"check\":\"product-coeff\"") != std::string::npos);
    CHECK(pc.out.find("\"check\":\"coeff-ratio\"") != std::string::npos);
}

TEST_CASE("profile emits tabular data") {
    auto res = run_cli("profile --id B-LEIBNIZ --terms 100");
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("correct digits") != std::string::npos);
}

TEST_CASE("pi respects CONSTFORGE_DIGITS") {
    std::string cmd = std::string("CONSTFORGE_DIGITS=40 ") + CONSTFORGE_CLI_PATH + " pi";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 1024> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
        out.append(buf.data(), n);
    pclose(pipe);
    CHECK(out.find("3.141592653589793238462643383279502884197") != std::string::npos);
}
