#include "cli.hpp"

#include "heatlaw/json_io.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace heatlaw;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "heatlaw_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string write(const std::string& name, const std::string& content) {
    const auto p = scratch(name);
    std::ofstream(p) << content;
    return p.string();
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<double>> parse_csv(const std::string& csv) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_CASE("derive an MGT preset") {
    const Result r = run({"derive", "--preset", "mgt", "--a", "1", "--b", "1", "--c", "0.5"});
    REQUIRE(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("order: 1"));
    CHECK_THAT(r.out, ContainsSubstring("(vi) Moore-Gibson-Thompson equation"));
    CHECK_THAT(r.out, ContainsSubstring("stability number: 1/2"));
}

TEST_CASE("derive recovers the heat equation from a vanishing order-1 law") {
    const Result r = run({"derive", "--n", "1", "--epsilon", "0", "--kappa1", "0"});
    REQUIRE(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("(i) heat equation"));
}

TEST_CASE("derive rejects omega = 1 and names the invariant") {
    const Result r = run({"derive", "--n", "2", "--epsilon", "1", "--omega1", "1"});
    CHECK(r.code != 0);
    CHECK_THAT(r.err, ContainsSubstring("omega_1"));
    CHECK_THAT(r.err, ContainsSubstring("[0,1)"));
}

TEST_CASE("derive defaults and indexed flags") {
    const Result r = run({"derive", "--n", "2", "--epsilon2=1/2", "--kappa", "1", "--format", "json"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j.at("params").at("epsilon") == Json::array({"1", "1/2"}));
    CHECK(j.at("params").at("omega") == Json::array({"0", "0"}));
    CHECK(j.at("params").at("kappa") == Json::array({"1", "1", "1"}));
    CHECK(j.at("coefficients").at("alpha") == Json::array({"3/2", "1/2"}));
    CHECK(j.at("classification").at("item") == 0);
}

TEST_CASE("derive with memory and relaxation") {
    const Result memory = run({"derive", "--preset", "heat", "--memory-omega", "1/2", "--memory-tau", "1/3", "--format", "json"});
    REQUIRE(memory.code == 0);
    CHECK(Json::parse(memory.out).at("classification").at("item") == 3);
    const Result relaxed = run({"derive", "--preset", "heat", "--memory-tau", "1/3", "--relax"});
    REQUIRE(relaxed.code == 0);
    CHECK_THAT(relaxed.out, ContainsSubstring("(iv) weakly damped wave equation"));
    CHECK(run({"derive", "--preset", "heat", "--relax"}).code != 0);
    CHECK(run({"derive", "--preset", "mgt", "--n", "1"}).code != 0);
}

TEST_CASE("derive lists the presets") {
    const Result r = run({"derive", "--list-presets"});
    REQUIRE(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 10);
    CHECK_THAT(r.out, ContainsSubstring("mgt-memory-2"));
}

TEST_CASE("solve the heat preset against exp(-kappa lambda t)") {
    const std::string config = write("heat.json", R"({
        "preset": "heat", "constants": {"a": "1/2"},
        "domain": {"L": 1, "K": 1}, "time": {"T": 1, "dt": 0.1},
        "initial": {"fourier": [[1]]}})");
    const auto csv = scratch("heat.csv");
    const Result r = run({"solve", config, "--out", csv.string()});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(slurp(csv));
    REQUIRE(rows.size() == 11);
    const double lambda = std::numbers::pi * std::numbers::pi;
    for (const auto& row : rows) CHECK_THAT(row[1], WithinAbs(std::exp(-0.5 * lambda * row[0]), 1e-12));
    const Json meta = Json::parse(slurp(csv.string() + ".meta.json"));
    CHECK(meta.at("diverged_at").is_null());
    CHECK(meta.at("effective_config").at("domain").at("K") == 1);
}

TEST_CASE("solve with zero initial data gives zeros") {
    const Result r = run({"solve", "--preset", "mgt", "--K", "3", "--T", "0.5", "--dt", "0.1"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("t,mode_1,mode_2,mode_3,l2_norm,l2_norm_dt\n", 0) == 0);
    for (const auto& row : parse_csv(r.out)) {
        for (std::size_t i = 1; i < row.size(); ++i) CHECK(row[i] == 0.0);
    }
}

TEST_CASE("supercritical MGT divergence is reported in the metadata") {
    const std::string config = write("super.json", R"({
        "equation": {"variable": 0, "time": {"2": "1", "3": "1"}, "laplacian": {"0": "2", "1": "1"}},
        "domain": {"L": 1, "K": 2}, "time": {"T": 200, "dt": 0.5},
        "initial": {"fourier": [[1, 0, 0], [0.5, 0, 0]]}})");
    const auto csv = scratch("super.csv");
    const auto meta_path = scratch("super.meta.json");
    const Result r = run({"solve", config, "--out", csv.string(), "--metadata", meta_path.string()});
    REQUIRE(r.code == 0);
    CHECK_THAT(r.err, ContainsSubstring("diverged"));
    const Json meta = Json::parse(slurp(meta_path));
    REQUIRE(meta.at("diverged_at").is_number());
    CHECK(meta.at("diverged_at").get<double>() > 0.0);
    CHECK(meta.at("law").at("stability_number") == "-1");
}

TEST_CASE("solve outputs are reproducible and flags override the config") {
    const std::string config = write("mem.json", R"({
        "preset": "mgt-memory-2",
        "domain": {"L": 1, "K": 4}, "time": {"T": 0.3, "dt": 0.1},
        "history": {"type": "constant", "values": 0.25},
        "initial": {"fourier": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]}})");
    const Result a = run({"solve", config, "--threads", "1"});
    const Result b = run({"solve", config, "--threads", "3"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const Result c = run({"solve", config, "--T", "0.2"});
    CHECK(parse_csv(c.out).size() == 3);
}

TEST_CASE("relaxed solve fills the top initial value from the memory law") {
    const std::string memory = write("gp.json", R"({
        "preset": "gurtin-pipkin", "domain": {"L": 1, "K": 3}, "time": {"T": 1, "dt": 0.25},
        "history": {"type": "constant", "values": [0.1, 0.2, 0.3]},
        "initial": {"fourier": [[1], [0.5], [0.25]]}})");
    const std::string relaxed = write("gp_relaxed.json", R"({
        "params": {"epsilon": [], "omega": [], "kappa": [1]},
        "memory": {"omega": 0, "kernel": {"type": "exponential", "tau": "1/2"}, "kappa": 0},
        "relax": true, "domain": {"L": 1, "K": 3}, "time": {"T": 1, "dt": 0.25},
        "history": {"type": "constant", "values": [0.1, 0.2, 0.3]},
        "initial": {"fourier": [[1], [0.5], [0.25]]}})");
    const Result a = run({"solve", memory});
    const Result b = run({"solve", relaxed});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    const auto x = parse_csv(a.out);
    const auto y = parse_csv(b.out);
    REQUIRE(x.size() == y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t k = 1; k <= 3; ++k) CHECK_THAT(y[i][k], WithinAbs(x[i][k], 1e-10));
    }
}

TEST_CASE("solve rejects inconsistent configs") {
    const std::string both = write("both.json", R"({"preset": "heat", "params": {"epsilon": [], "omega": [], "kappa": [1]}})");
    const Result r = run({"solve", both});
    CHECK(r.code != 0);
    CHECK_THAT(r.err, ContainsSubstring("mutually exclusive"));
    const std::string wrong = write("wrong.json", R"({"preset": "mgt", "domain": {"K": 1}, "initial": {"fourier": [[1, 2]]}})");
    CHECK_THAT(run({"solve", wrong}).err, ContainsSubstring("time order 3"));
    CHECK(run({"solve", scratch("missing.json").string()}).code != 0);
}

TEST_CASE("roots of the heat equation and of MGT") {
    const Result heat = run({"roots", "--preset", "heat", "--K", "3"});
    REQUIRE(heat.code == 0);
    const Json h = Json::parse(heat.out);
    REQUIRE(h.at("modes").size() == 3);
    for (const auto& m : h.at("modes")) {
        REQUIRE(m.at("roots").size() == 1);
        CHECK(m.at("roots")[0].at("im") == 0.0);
    }
    const Json mgt = Json::parse(run({"roots", "--preset", "mgt", "--K", "8"}).out);
    for (const auto& m : mgt.at("modes")) {
        for (const auto& z : m.at("roots")) CHECK(z.at("re").get<double>() < 0.0);
    }
    CHECK(mgt.at("spectral_abscissa").get<double>() < 0.0);
    const Json memory = Json::parse(run({"roots", "--preset", "mgt-memory-2", "--K", "2"}).out);
    CHECK(memory.at("degree") == 4);
    CHECK(memory.at("modes")[0].at("roots").size() == 4);
}

TEST_CASE("verify is deterministic and reports failures through the exit code") {
    const Result a = run({"verify", "--suite", "induction", "--seed", "7", "--no-timing"});
    const Result b = run({"verify", "--suite", "induction", "--seed", "7", "--no-timing"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const Json j = Json::parse(a.out);
    CHECK(j.at("seed") == 7);
    CHECK(j.at("failures").empty());
    CHECK(run({"verify", "--suite", "nope"}).code != 0);
}

TEST_CASE("verify takes the seed from HEATLAW_SEED") {
    ::setenv("HEATLAW_SEED", "99", 1);
    const Result r = run({"verify", "--suite", "beta"});
    ::unsetenv("HEATLAW_SEED");
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out).at("seed") == 99);
    CHECK(Json::parse(run({"verify", "--suite", "catalog", "--seed", "5"}).out).at("seed") == 0);
}

TEST_CASE("verify all aggregates every suite") {
    const Result r = run({"verify", "--suite", "all"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j.at("passed") == true);
    CHECK(j.at("suites").size() == 8);
    CHECK(j.contains("wall_ms"));
}
