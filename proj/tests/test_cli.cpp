#include <doctest.h>

#include <sstream>

#include "lfbo/cli/experiment.hpp"
#include "temp_dir.hpp"

using namespace lfbo;
using namespace lfbo::cli;
using lfbo::testing::read_file;
using lfbo::testing::TempDir;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "lfbo");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> quick(const TempDir& dir, std::vector<std::string> extra) {
    std::vector<std::string> args{"--out", dir.path().string(), "--budget", "12", "--candidates", "64", "--epochs", "20"};
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace

TEST_CASE("seed lists") {
    CHECK(parse_seeds("0..4") == std::vector<std::uint64_t>{0, 1, 2, 3, 4});
    CHECK(parse_seeds("0,3,7") == std::vector<std::uint64_t>{0, 3, 7});
    CHECK(parse_seeds("5") == std::vector<std::uint64_t>{5});
    CHECK_THROWS_AS(parse_seeds("4..1"), ConfigError);
    CHECK_THROWS_AS(parse_seeds("a"), ConfigError);
}

TEST_CASE("configuration JSON round-trips and rejects unknown keys") {
    ExperimentConfig c;
    c.method = "lfbo-power";
    c.lambda = 0.5;
    c.seeds = {1, 2};
    c.mlp_hidden = {8};
    const nlohmann::json j = c;
    const auto back = j.get<ExperimentConfig>();
    CHECK(nlohmann::json(back) == j);
    CHECK(back.lambda == 0.5);

    nlohmann::json bad = j;
    bad["nonsense"] = 1;
    CHECK_THROWS_AS(bad.get<ExperimentConfig>(), ConfigError);
}

TEST_CASE("run writes one trace per seed and a summary") {
    TempDir dir;
    const auto r = invoke(concat({"run"}, quick(dir, {"--seeds", "0..4"})));
    REQUIRE(r.code == 0);
    const fs::path exp = dir.path() / "synthetic1d";
    for (int s = 0; s < 5; ++s) CHECK(fs::exists(exp / "lfbo-ei" / (std::to_string(s) + ".csv")));
    REQUIRE(fs::exists(exp / "summary.csv"));

    const auto rows = driver::read_summary_csv(exp / "summary.csv");
    CHECK(rows.size() == 12);
    CHECK(rows.front().n_seeds == 5);
    const auto rebuilt = summarize_directory(exp);
    REQUIRE(rebuilt.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        REQUIRE(rebuilt[i].method == rows[i].method);
        REQUIRE(rebuilt[i].mean_regret == rows[i].mean_regret);
        REQUIRE(rebuilt[i].median_regret == rows[i].median_regret);
    }

    SUBCASE("reruns are byte-identical") {
        const auto first = read_file(exp / "lfbo-ei" / "3.csv");
        const auto summary = read_file(exp / "summary.csv");
        TempDir other;
        REQUIRE(invoke(concat({"run"}, quick(other, {"--seeds", "0..4", "--jobs", "3"}))).code == 0);
        CHECK(read_file(other.path() / "synthetic1d" / "lfbo-ei" / "3.csv") == first);
        CHECK(read_file(other.path() / "synthetic1d" / "summary.csv") == summary);
    }

    SUBCASE("a second method joins the summary") {
        REQUIRE(invoke(concat({"run"}, quick(dir, {"--seeds", "0,1", "--method", "random"}))).code == 0);
        const auto both = driver::read_summary_csv(exp / "summary.csv");
        CHECK(both.size() == 24);
        CHECK(both.front().method == "lfbo-ei");
        CHECK(both.back().method == "random");
    }
}

TEST_CASE("configuration errors exit with status 2") {
    TempDir dir;
    CHECK(invoke(concat({"run"}, quick(dir, {"--method", "lfbo-power"}))).code == 2);
    CHECK(invoke(concat({"run"}, quick(dir, {"--method", "lfbo-ei", "--lambda", "0.5"}))).code == 2);
    CHECK(invoke(concat({"run"}, quick(dir, {"--method", "tpe"}))).code == 2);
    CHECK(invoke(concat({"run"}, quick(dir, {"--gamma", "1.5"}))).code == 2);
    CHECK(invoke(concat({"run"}, quick(dir, {"--budget", "5"}))).code == 2);
    CHECK(invoke(concat({"run"}, quick(dir, {"--no-such-flag"}))).code == 2);
    CHECK(invoke(concat({"ablate"}, quick(dir, {"--param", "gamma"}))).code == 2);
    CHECK(invoke(concat({"ablate"}, quick(dir, {"--param", "gamma", "--grid", "0.5,1.2"}))).code == 2);
    CHECK(invoke(concat({"ablate"}, quick(dir, {"--param", "width", "--grid", "1"}))).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke(concat({"run"}, quick(dir, {"--config", (dir.path() / "missing.json").string()}))).code == 2);
    CHECK(fs::is_empty(dir.path()));
}

TEST_CASE("runtime failures exit with status 1") {
    TempDir dir;
    const auto r = invoke(concat({"run"}, quick(dir, {"--table", (dir.path() / "missing.csv").string()})));
    CHECK(r.code == 1);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("help exits cleanly") {
    CHECK(invoke({"--help"}).code == 0);
    CHECK(invoke({"run", "--help"}).code == 0);
}

TEST_CASE("config files, flag overrides and print-config") {
    TempDir dir;
    const auto path = dir.write("cfg.json", R"({"method": "lfbo-pi", "gamma": 0.2, "budget": 30, "seeds": [3, 4]})");

    const auto shown = invoke({"run", "--config", path.string(), "--budget", "20", "--print-config"});
    REQUIRE(shown.code == 0);
    const auto j = nlohmann::json::parse(shown.out);
    CHECK(j["method"] == "lfbo-pi");
    CHECK(j["gamma"] == 0.2);
    CHECK(j["budget"] == 20);
    CHECK(j["seeds"] == nlohmann::json::array({3, 4}));

    const auto bad = dir.write("bad.json", R"({"method": "lfbo-ei", "colour": "blue"})");
    CHECK(invoke({"run", "--config", bad.string(), "--print-config"}).code == 2);
    const auto broken = dir.write("broken.json", "{");
    CHECK(invoke({"run", "--config", broken.string()}).code == 2);

    // the printed configuration reproduces the run
    const auto saved = dir.write("saved.json", shown.out);
    const auto again = invoke({"run", "--config", saved.string(), "--print-config"});
    CHECK(nlohmann::json::parse(again.out) == j);
}

TEST_CASE("lambda ablation writes one row per grid value") {
    TempDir dir;
    const auto r =
        invoke(concat({"ablate"}, quick(dir, {"--param", "lambda", "--grid", "0,0.5,1", "--seeds", "0,1"})));
    REQUIRE(r.code == 0);
    const fs::path exp = dir.path() / "synthetic1d-ablate-lambda";
    const auto cells = read_ablation_summary(exp / "summary.csv");
    REQUIRE(cells.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(cells[i].param == "lambda");
        CHECK(cells[i].method == "lfbo-power");
        CHECK(cells[i].n_seeds == 2);
        CHECK(cells[i].value == std::vector<double>{0.0, 0.5, 1.0}[i]);
    }
    CHECK(fs::exists(exp / "lfbo-power_lambda_0.5" / "1.csv"));
}

TEST_CASE("gamma ablation covers both default methods") {
    TempDir dir;
    const auto r = invoke(concat({"ablate"}, quick(dir, {"--param", "gamma", "--grid", "0.25,0.5", "--seeds", "0"})));
    REQUIRE(r.code == 0);
    const auto cells = read_ablation_summary(dir.path() / "synthetic1d-ablate-gamma" / "summary.csv");
    REQUIRE(cells.size() == 4);
    CHECK(cells[0].method == "lfbo-ei");
    CHECK(cells[3].method == "lfbo-pi");
    CHECK(cells[3].value == 0.5);
}

TEST_CASE("tabular runs name the experiment after the table") {
    TempDir dir;
    std::ostringstream csv;
    csv << "a,b,loss\n";
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 3; ++b) csv << a << ',' << b << ',' << a + b << '\n';
    const auto table = dir.write("toy_table.csv", csv.str());
    const auto r = invoke(concat({"run"}, quick(dir, {"--table", table.string(), "--backend", "gbt", "--rounds", "10"})));
    REQUIRE(r.code == 0);
    const auto t = driver::read_trace_csv(dir.path() / "toy_table" / "lfbo-ei" / "0.csv");
    CHECK(t.records.size() == 12);
    CHECK(t.records.back().regret == 0.0);
}

TEST_CASE("composite subcommand") {
    TempDir dir;
    const auto r = invoke({"composite", "--out", dir.path().string(), "--budget", "12", "--candidates", "64",
                           "--epochs", "20", "--composite-epochs", "20", "--composite-hidden", "8", "--seeds", "0"});
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir.path() / "composite" / "composite-lfbo-ei" / "0.csv"));
    CHECK(fs::exists(dir.path() / "composite" / "lfbo-ei" / "0.csv"));
    CHECK(fs::exists(dir.path() / "composite" / "summary.csv"));
}

TEST_CASE("equivalence subcommand") {
    TempDir dir;
    const auto r = invoke({"equivalence", "--out", dir.path().string(), "--n", "30,60", "--seeds", "0",
                           "--grid-points", "21", "--eq-epochs", "10", "--eq-hidden", "4"});
    REQUIRE(r.code == 0);
    const auto report = read_file(dir.path() / "equivalence" / "report.csv");
    CHECK(report.rfind("method,n,seed,l1_error\n", 0) == 0);
    CHECK(std::count(report.begin(), report.end(), '\n') == 1 + 2 * 3 * 2);
}
