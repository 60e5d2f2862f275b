#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "singulab/cli.hpp"
#include "singulab/constants.hpp"

using namespace singulab;
using namespace singulab::cli;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir(const std::string& name) {
    auto d = std::filesystem::temp_directory_path() / ("singulab_test_" + name);
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("constants output") {
    auto r = run_cli({"constants", "--dim", "3", "--q", "1.6", "--m", "1", "--format", "json"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["constants"]["beta"]["value"].get<double>() == doctest::Approx(2.0 / 3.0));
    CHECK(j["constants"]["lambda_nmq"]["value"].get<double>() == doctest::Approx(-0.2403749283845681));
    CHECK(j["constants"]["lambda_nmq"]["provenance"] == "closed-form");

    r = run_cli({"constants", "--dim", "3", "--q", "1.5", "--format", "json"});
    const json c = json::parse(r.out);
    CHECK(c["constants"]["lambda_nm"]["value"].get<double>() == doctest::Approx(4.0));
    CHECK_FALSE(c["constants"].contains("lambda_nmq"));
    CHECK(c["absent"].contains("lambda_nmq"));

    r = run_cli({"constants", "--dim", "2", "--q", "3", "--format", "json"});
    CHECK_FALSE(json::parse(r.out)["constants"].contains("omega_E"));

    r = run_cli({"constants", "--dim", "3", "--q", "1.6", "--format", "text"});
    CHECK(r.out.find("lambda_nmq          -0.240374928385") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run_cli({"constants", "--q", "0.5"}).code == 2);
    CHECK(run_cli({"constants"}).code == 2);
    CHECK(run_cli({"bogus"}).code == 2);
    CHECK(run_cli({"--help"}).code == 0);
    CHECK(run_cli({"classify", "--seed", "weak-singular", "--q", "1.6"}).code == 2);  // regime
    CHECK(run_cli({"integrate", "--state", "1,5,0", "--r-end", "1e-8", "--q", "1.5", "--m", "0.01"}).code == 3);
    CHECK(run_cli({"integrate", "--state", "1,5,0", "--r-end", "1e-8", "--q", "1.5", "--m", "0.01",
                   "--allow-blowup"}).code == 0);
    CHECK(run_cli({"oracle", "--q", "1.5", "--m", "0.01", "--ua", "20", "--ub", "20"}).code == 3);
}

TEST_CASE("classify strong singular") {
    auto r = run_cli({"classify", "--seed", "strong-singular", "--dim", "3", "--q", "1.6", "--m", "1"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["regime"] == "strong-singular");
    CHECK(j["estimate"]["name"] == "lambda_hat");
    CHECK(j["estimate"]["provenance"] == "fitted");
    CHECK(j["closed_form"]["provenance"] == "closed-form");
    CHECK(std::abs(j["estimate"]["value"].get<double>() / -0.2403749283845681 - 1) < 0.05);
}

TEST_CASE("verify Keller-Osserman on the Emden profile") {
    auto r = run_cli({"verify", "--estimate", "keller-osserman", "--side", "origin", "--profile", "emden", "--dim",
                      "3", "--q", "1.5"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["report"]["verdict"] == "Consistent");
}

TEST_CASE("integrate writes a CSV that reads back") {
    const auto dir = temp_dir("integrate");
    const std::string csv = (dir / "t.csv").string(), plot = (dir / "t.dat").string();
    auto r = run_cli({"integrate", "--seed", "regular", "--u0", "0", "--q", "1.5", "--eps", "1e-3", "-o", csv,
                      "--plot", plot});
    REQUIRE(r.code == 0);
    const Trajectory t = read_trajectory_csv(read_file(csv), Params::make(3, 1.5, 1.0));
    CHECK(t.samples.back().r == doctest::Approx(1.0));
    CHECK(std::abs(t.samples.back().u) < 1.0);
    const PlotCurve c = read_plot(read_file(plot));
    CHECK(c.name == "u");
    CHECK(c.x_label == "r");
    CHECK(c.x.size() == t.size());
    CHECK(c.y.back() == t.samples.back().u);
    // classify from the file
    r = run_cli({"classify", "--input", csv, "--q", "1.5"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["regime"] == "removable");
}

TEST_CASE("config file supplies flags, command line overrides") {
    const auto dir = temp_dir("config");
    const std::string cfg = (dir / "run.toml").string();
    write_file(cfg, "[constants]\ndim = 3\nq = 1.6\nformat = \"json\"\n");
    auto r = run_cli({"--config", cfg, "constants"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["params"]["q"].get<double>() == doctest::Approx(1.6));
    r = run_cli({"--config", cfg, "constants", "--q", "1.5"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["params"]["q"].get<double>() == doctest::Approx(1.5));
}

TEST_CASE("sweep grid") {
    const auto dir = temp_dir("sweep");
    auto r = run_cli({"sweep", "--q", "1.1:0.1:1.9", "--m", "1", "--seed", "regular", "--u0", "0", "--jobs", "3",
                      "--out", dir.string()});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 10);
    CHECK(rows[0] == sweep_csv_header());
    CHECK(rows[1][3] == "1.1");
    CHECK(rows[9][3] == "1.9");
    CHECK(std::filesystem::exists(dir / "manifest.json"));
    CHECK(std::filesystem::exists(dir / "runs" / "run_00008.json"));
    CHECK(read_file((dir / "sweep.csv").string()) == r.out);
    const json m = json::parse(read_file((dir / "manifest.json").string()));
    CHECK(m["manifest_sha256"] == rows[1].back());
    const json run0 = json::parse(read_file((dir / "runs" / "run_00000.json").string()));
    CHECK(run0["manifest_sha256"] == rows[1].back());
}

TEST_CASE("sweep with failing rows") {
    // weak-singular is not a branch for q >= 1.5 in N = 3
    auto r = run_cli({"sweep", "--q", "1.2,1.6", "--seed", "weak-singular", "--gamma", "-1"});
    CHECK(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][15] == "ok");
    CHECK(rows[2][15] == "failed");
    CHECK(run_cli({"sweep", "--q", "1.2,1.6", "--seed", "weak-singular", "--strict"}).code == 3);
    CHECK(run_cli({"sweep", "--q", "1.6", "--seed", "weak-singular"}).code == 3);
}

TEST_CASE("SINGULAB_JOBS sets the default worker count") {
    setenv("SINGULAB_JOBS", "2", 1);
    const auto dir = temp_dir("jobs");
    auto r = run_cli({"sweep", "--q", "1.2", "--out", dir.string()});
    unsetenv("SINGULAB_JOBS");
    REQUIRE(r.code == 0);
    CHECK(json::parse(read_file((dir / "manifest.json").string()))["runtime"]["jobs"] == 2);
}

TEST_CASE("oracle command") {
    auto r = run_cli({"oracle", "--q", "1.5", "--a", "0.1", "--b", "1", "--cells", "2000"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["max_error"].get<double>() < 1e-6);
    CHECK(j["convergence_order"].get<double>() >= 1.9);
    r = run_cli({"oracle", "--q", "1.5", "--pure-emden"});
    REQUIRE(r.code == 0);
    const json e = json::parse(r.out);
    CHECK(e["max_error"].get<double>() < 1e-5);
    // linear in ln r, reproduced exactly by the scheme
    CHECK(e["convergence_order"].is_null());
    CHECK(e.contains("convergence_note"));
}

TEST_CASE("csv quoting") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    const auto rows = parse_csv(csv_line({"x", "a,b", "q\"q", "line\nbreak"}) + csv_line({"", "2"}));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"x", "a,b", "q\"q", "line\nbreak"});
    CHECK(rows[1] == std::vector<std::string>{"", "2"});
}

TEST_CASE("ranges") {
    CHECK(parse_range("1.1:0.1:1.9").size() == 9);
    CHECK(parse_range("1.1:0.1:1.9")[4] == 1.5);
    CHECK(parse_range("1,2,3") == std::vector<double>{1, 2, 3});
    CHECK(parse_range("2.5") == std::vector<double>{2.5});
    CHECK_THROWS(parse_range("1:0:2"));
    CHECK_THROWS(parse_range("1:x:2"));
    CHECK_THROWS(parse_range(""));
}

TEST_CASE("number formatting round-trips") {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02e23}) CHECK(std::stod(format_double(x)) == x);
    CHECK(format_double(1.5) == "1.5");
    CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("sha256") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
