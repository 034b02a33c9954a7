#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "molent/cli/app.hpp"
#include "molent/cli/output.hpp"
#include "molent/cli/run_config.hpp"
#include "molent/cli/units.hpp"
#include "molent/error.hpp"

using namespace molent;
using namespace molent::cli;

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "molent_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

}  // namespace

TEST_CASE("unit-aware quantities") {
    CHECK(parse_quantity("1.46D", Dimension::dipole) == doctest::Approx(1.46 * 3.33564e-30).epsilon(1e-6));
    CHECK(parse_quantity("10nm", Dimension::length) == doctest::Approx(1e-8));
    CHECK(parse_quantity("0.028us", Dimension::time) == doctest::Approx(2.8e-8));
    CHECK(parse_quantity("5 ns", Dimension::time) == doctest::Approx(5e-9));
    CHECK(parse_quantity("4e9/s", Dimension::rate) == 4e9);
    CHECK(parse_quantity("4e9", Dimension::rate) == 4e9);
    CHECK(parse_quantity("1kV/cm", Dimension::field) == doctest::Approx(1e5));
    CHECK(parse_quantity("100", Dimension::count) == 100);
    CHECK_THROWS_AS(parse_quantity("5 nm", Dimension::time), InvalidArgument);
    CHECK_THROWS_AS(parse_quantity("abc", Dimension::rate), InvalidArgument);
    CHECK_THROWS_AS(parse_quantity("1.5", Dimension::count), InvalidArgument);
}

TEST_CASE("run config JSON round trip") {
    RunConfig c;
    c.scenario = "switch_off";
    c.overrides["gamma"] = 1e5;
    c.observables = {"rho_ss", "C"};
    c.sweep = SweepSpec{"J", {1e9, 2e9}};
    c.jobs = 3;
    const RunConfig back = run_config_from_json(to_json(c));
    CHECK(back == c);
    CHECK(to_json(back) == to_json(c));

    RunConfig custom;
    custom.custom = CustomSpec{"L1L2", SystemParams::free(1.5e11, 4e9, 1e6), 5e-9, 101};
    CHECK(run_config_from_json(to_json(custom)) == custom);

    CHECK_THROWS_AS(run_config_from_json(R"({"schema_version":1,"scenario":"free_eg","colour":1})"),
                    InvalidArgument);
    CHECK_THROWS_AS(run_config_from_json(R"({"schema_version":2,"scenario":"free_eg"})"), InvalidArgument);
    CHECK_THROWS_AS(run_config_from_json(R"({"scenario":"free_eg"})"), InvalidArgument);
}

TEST_CASE("sweep specification") {
    const auto s = parse_sweep("J=1e9,2e9,4e9");
    CHECK(s.param == "J");
    CHECK(s.values == std::vector<double>{1e9, 2e9, 4e9});
    CHECK(parse_sweep("horizon=1ns,2ns").values[1] == doctest::Approx(2e-9));
    CHECK_THROWS_AS(parse_sweep("J"), InvalidArgument);
    CHECK(sweep_point_path("out.csv", "J", 2e9) == "out.J_2e+09.csv");
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.0) == "0.0000000000000000e+00");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(std::stod(format_number(0.1)) == 0.1);
}

TEST_CASE("run writes a deterministic CSV") {
    const auto a = scratch("free_a.csv"), b = scratch("free_b.csv");
    const std::vector<std::string> base{"run", "--scenario", "free_eg", "--horizon", "1ns", "--samples", "51"};
    auto args = base;
    args.insert(args.end(), {"--out", a.string()});
    REQUIRE(invoke(args).code == 0);
    args = base;
    args.insert(args.end(), {"--out", b.string(), "--jobs", "4"});
    REQUIRE(invoke(args).code == 0);
    const std::string text = slurp(a);
    CHECK(text == slurp(b));
    CHECK(text.find('\r') == std::string::npos);
    const auto rows = lines(text);
    REQUIRE(rows.size() == 52);
    CHECK(rows[0] == "t_s,rho11,rho22,rho33,rho44,rho_ff,rho_kk,C");
    // t = 0 row: |e1g2> is a product state
    CHECK(rows[1].rfind("0.0000000000000000e+00,", 0) == 0);
    CHECK(rows[1].substr(rows[1].rfind(',') + 1) == "0.0000000000000000e+00");
}

TEST_CASE("run config file drives the same output") {
    const auto cfg = scratch("run.json"), direct = scratch("direct.csv"), via = scratch("via.csv");
    const std::vector<std::string> base{"run", "--scenario", "free_LL", "--horizon", "0.5ns", "--samples", "11"};
    auto args = base;
    args.insert(args.end(), {"--out", direct.string()});
    REQUIRE(invoke(args).code == 0);
    args = base;
    args.insert(args.end(), {"--write-config", cfg.string()});
    REQUIRE(invoke(args).code == 0);
    REQUIRE(invoke({"run", "--config", cfg.string(), "--out", via.string()}).code == 0);
    CHECK(slurp(direct) == slurp(via));
}

TEST_CASE("catalog listing") {
    const auto r = invoke({"catalog"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    CHECK(l.size() == catalog().size());
    CHECK(r.out.find("free_eg") != std::string::npos);
    CHECK(r.out == invoke({"catalog"}).out);
}

TEST_CASE("zeno subcommand") {
    const auto r = invoke({"zeno", "--tau", "0.01ns", "--T", "1ns"});
    REQUIRE(r.code == 0);
    const auto at = r.out.find("survival=");
    REQUIRE(at != std::string::npos);
    CHECK(std::stod(r.out.substr(at + 9)) == doctest::Approx(0.852107416).epsilon(1e-8));
}

TEST_CASE("constants subcommand") {
    const auto r = invoke({"constants"});
    REQUIRE(r.code == 0);
    const auto at = r.out.find("J_per_s=");
    REQUIRE(at != std::string::npos);
    CHECK(std::stod(r.out.substr(at + 8)) == doctest::Approx(4.0425862897e9).epsilon(1e-9));
}

TEST_CASE("exit codes and error records") {
    auto r = invoke({"run", "--scenario", "no_such"});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("error code=2 kind=usage") != std::string::npos);

    CHECK(invoke({"frobnicate"}).code == kExitUsage);
    CHECK(invoke({"run", "--scenario", "free_eg", "--rel-tol", "-1"}).code == kExitUsage);

    r = invoke({"run", "--scenario", "free_eg", "--out", "/nonexistent_dir/x/y.csv", "--samples", "3",
             "--horizon", "0.1ns"});
    CHECK(r.code == kExitIo);
    CHECK(r.err.find("kind=io") != std::string::npos);

    r = invoke({"run", "--config", "/nonexistent_dir/cfg.json"});
    CHECK(r.code == kExitIo);

    r = invoke({"run", "--scenario", "free_eg", "--samples", "3", "--max-steps", "10", "--out",
             scratch("budget.csv").string()});
    CHECK(r.code == kExitIntegration);
    CHECK(r.err.find("kind=integration t_reached=") != std::string::npos);
}

TEST_CASE("plot scripts") {
    const auto csv = scratch("plot.csv");
    REQUIRE(invoke({"run", "--scenario", "free_eg", "--horizon", "0.1ns", "--samples", "5", "--out",
                 csv.string()})
                .code == 0);
    const auto script = plot_script("fig3a", {csv.string()});
    CHECK(script.find(csv.string()) != std::string::npos);
    CHECK_THROWS_AS(plot_script("fig9z", {csv.string()}), InvalidArgument);
    CHECK_THROWS_AS(plot_script("fig3a", {scratch("missing.csv").string()}), IoError);
    CHECK(invoke({"plot", "--figure", "fig9z", "--csv", csv.string()}).code == kExitUsage);
    CHECK(invoke({"plot", "--figure", "fig3a", "--csv", scratch("missing.csv").string()}).code == kExitIo);
}
