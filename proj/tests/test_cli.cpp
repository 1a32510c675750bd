#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "riskconv/json_io.hpp"

using nlohmann::json;

TEST_SUITE_BEGIN("cli");

namespace {

std::string cli_path() {
    const char* p = std::getenv("RISKCONV_CLI");
    REQUIRE_MESSAGE(p != nullptr, "RISKCONV_CLI must point at the built binary");
    return p;
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = std::string("/tmp/riskconv_test_") + name;
    std::ofstream f(path);
    f << content;
    return path;
}

}  // namespace

TEST_CASE("riskmetric subcommand") {
    const std::string curves = write_temp("c.json", R"({"family":"dualpower","beta":0.3})");
    const std::string dist = write_temp("d.json", R"({"family":"uniform","a":0,"b":1})");
    const RunResult r = run("riskmetric --curves " + curves + " --dist " + dist);
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(std::abs(j.at("value").get<double>() - (1.0 - 1.0 / 1.3)) < 1e-6);
}

TEST_CASE("negate wrapper flag") {
    const std::string curves = write_temp("c2.json", R"({"family":"dualpower","beta":0.3})");
    const std::string dist =
        write_temp("d2.json", R"({"family":"uniform","a":0,"b":1,"negate":true})");
    const RunResult r = run("riskmetric --curves " + curves + " --dist " + dist);
    CHECK(r.exit_code == 0);
    CHECK(std::abs(json::parse(r.out).at("value").get<double>() + 1.0 / 1.3) < 1e-6);
}

TEST_CASE("share-constant subcommand") {
    const RunResult r = run("share-constant --alphas 1.2,1.4");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(std::abs(j.at("probs")[0].get<double>() - 0.5129) < 5e-4);
    CHECK(std::abs(j.at("value").get<double>() - 0.8141) < 5e-4);
}

TEST_CASE("infconv subcommand with the pwl schema") {
    const std::string curves = write_temp(
        "c3.json", R"([{"family":"dualpower","beta":0.3},{"family":"dualpower","beta":0.6}])");
    const std::string dist = write_temp("d3.json", R"({"family":"uniform","a":0,"b":1})");
    const RunResult counter =
        run("infconv --mode counter --curves " + curves + " --dist " + dist);
    CHECK(counter.exit_code == 0);
    CHECK(std::abs(json::parse(counter.out).at("value").get<double>() - 0.210367) < 1e-4);

    const RunResult como = run("infconv --mode como --curves " + curves + " --dist " + dist);
    CHECK(std::abs(json::parse(como.out).at("value").get<double>() - 0.230769) < 1e-4);
}

TEST_CASE("portfolio subcommand") {
    const std::string curves = write_temp(
        "c4.json", R"([{"family":"power","alpha":2},{"family":"power","alpha":2}])");
    const std::string dist = write_temp("d4.json", R"({"family":"uniform","a":0,"b":1})");
    const RunResult r =
        run("portfolio --curves " + curves + " --dist " + dist + " --wealth 1 --cost quadratic");
    CHECK(r.exit_code == 0);
    CHECK(std::abs(json::parse(r.out).at("lambda_star").get<double>() - 5.0 / 9.0) < 1e-4);
}

TEST_CASE("sweep subcommand is monotone") {
    const RunResult r = run("sweep --example 4 --alpha-grid 0.5:3:0.25");
    CHECK(r.exit_code == 0);
    double prev = 1e300;
    std::size_t rows = 0;
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) {
        const auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        const double lam = std::stod(line.substr(comma + 1));
        REQUIRE(lam <= prev + 1e-9);
        prev = lam;
        ++rows;
    }
    CHECK(rows == 11);
}

TEST_CASE("tables are deterministic byte for byte") {
    const RunResult a = run("table2");
    const RunResult b = run("table2");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("# source: Table 2") == 0);

    const RunResult t1a = run("table1");
    const RunResult t1b = run("table1");
    CHECK(t1a.out == t1b.out);
    CHECK(t1a.out.find("divergent") != std::string::npos);
}

TEST_CASE("figure subcommand") {
    const RunResult f4 = run("figure --which 4 --grid 101");
    CHECK(f4.exit_code == 0);
    // diff column changes sign exactly once in the interior.
    std::istringstream lines(f4.out);
    std::string line;
    std::getline(lines, line);
    int sign_changes = 0;
    double prev = 0.0;
    bool have_prev = false;
    while (std::getline(lines, line)) {
        const auto last_comma = line.rfind(',');
        const double diff = std::stod(line.substr(last_comma + 1));
        if (std::abs(diff) > 1e-12) {
            if (have_prev && prev * diff < 0.0) ++sign_changes;
            prev = diff;
            have_prev = true;
        }
    }
    CHECK(sign_changes == 1);
}

TEST_CASE("exit codes") {
    CHECK(run("riskmetric --curves /nonexistent.json --dist /nonexistent.json").exit_code == 2);
    CHECK(run("bogus-subcommand").exit_code == 2);
    const std::string curves = write_temp("c5.json", R"({"family":"power","alpha":0.3})");
    const std::string dist = write_temp("d5.json", R"({"family":"pareto","alpha":3,"theta":2})");
    // Divergent tail integral: numerical failure.
    CHECK(run("riskmetric --curves " + curves + " --dist " + dist).exit_code == 3);
}

TEST_SUITE_END();
