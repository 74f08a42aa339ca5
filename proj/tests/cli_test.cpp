#include "fixpoint/cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fixpoint;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("fixpoint_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("run writes the four outputs and reports the Q-rate") {
    const auto dir = scratch("run");
    RunConfig cfg;
    cfg.scenario = "two_lines_pi3";
    cfg.out_dir = dir.string();
    std::ostringstream out, err;
    CHECK(cmd_run(cfg, out, err) == 0);
    for (const char* f : {"trace.csv", "trace.json", "report.json", "plot.svg"}) CHECK(fs::exists(dir / f));
    const auto report = Json::parse(slurp(dir / "report.json"));
    CHECK(report["measured_q_rate"].get<double>() == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(report["stop_reason"] == "fixed_point");
    CHECK(report["status"] == "ok");
    CHECK(slurp(dir / "plot.svg").find("<polyline") != std::string::npos);
    CHECK(out.str().find("q_rate") != std::string::npos);
}

TEST_CASE("sawtooth run stops at a stuck point away from the intersection") {
    RunConfig cfg;
    cfg.scenario = "sawtooth";
    cfg.start = make_vector({0.09, 0.03});
    cfg.estimators = false;
    const auto r = run_scenario(cfg);
    const auto report = Json::parse(r.report_json);
    CHECK(report["stop_reason"] == "fixed_point");
    CHECK(report["dist_limit_to_intersection"].get<double>() > 0.0);
    const double x = report["limit"][0].get<double>();
    CHECK(std::abs(std::log2(x) - std::round(std::log2(x))) < 1e-12);
    CHECK(report["limit"][1].get<double>() == 0.0);
    CHECK(r.mismatches.empty());
}

TEST_CASE("same config and seed give byte-identical outputs") {
    RunConfig cfg;
    cfg.scenario = "epigraph";
    cfg.seed = 17;
    cfg.samples = 3000;
    const auto a = run_scenario(cfg), b = run_scenario(cfg);
    CHECK(a.trace_csv == b.trace_csv);
    CHECK(a.trace_json == b.trace_json);
    CHECK(a.report_json == b.report_json);
    CHECK(a.plot_svg == b.plot_svg);
}

TEST_CASE("malformed scenario JSON exits 1 with a parse diagnostic") {
    const auto dir = scratch("malformed");
    const auto file = dir / "broken.json";
    std::ofstream(file) << "{\"name\": \"broken\", \"A\": ";
    RunConfig cfg;
    cfg.scenario = file.string();
    cfg.out_dir = dir.string();
    std::ostringstream out, err;
    CHECK(cmd_run(cfg, out, err) == 1);
    CHECK(err.str().find("parse error") != std::string::npos);
}

TEST_CASE("a failed expectation exits 2") {
    const auto dir = scratch("mismatch");
    Json j = scenario_json(build("two_lines_pi3"));
    j["expected"]["q_rate"]["value"] = 0.3;
    const auto file = dir / "wrong.json";
    std::ofstream(file) << j.dump();
    RunConfig cfg;
    cfg.scenario = file.string();
    cfg.out_dir = dir.string();
    cfg.estimators = false;
    std::ostringstream out, err;
    CHECK(cmd_run(cfg, out, err) == 2);
    CHECK(err.str().find("q_rate") != std::string::npos);
    CHECK(Json::parse(slurp(dir / "report.json"))["status"] == "mismatch");
}

TEST_CASE("run config validation") {
    const auto ok = config_from_json(Json::parse(R"({"scenario":"sawtooth","seed":3,"delta":0.25,"start":[0.3,0.1]})"));
    CHECK(ok.scenario == "sawtooth");
    CHECK(ok.seed == 3);
    CHECK(*ok.delta == 0.25);
    CHECK(config_json(config_from_json(config_json(ok))).dump() == config_json(ok).dump());
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"scenaro":"x"})")), SchemaError);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"op":"cyclic"})")), SchemaError);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"max_iter":0})")), SchemaError);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"samples":"many"})")), SchemaError);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"([1,2])")), SchemaError);
}

TEST_CASE("verify and estimate commands") {
    std::ostringstream out, err;
    CHECK(cmd_verify("no_such_suite", 0, std::nullopt, out, err) == 1);

    std::ostringstream eo, ee;
    CHECK(cmd_estimate("sr_prime", "two_lines_pi3", 1.0, 2000, 0, eo, ee) == 0);
    const auto e = Json::parse(eo.str());
    CHECK(e["value"].get<double>() == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-9));
    std::ostringstream bo, be;
    CHECK(cmd_estimate("lipschitz", "two_lines_pi3", std::nullopt, 100, 0, bo, be) == 1);
    CHECK(be.str().find("unknown constant") != std::string::npos);
}

TEST_CASE("Douglas-Rachford runs through the same pipeline") {
    RunConfig cfg;
    cfg.scenario = "two_lines_pi3";
    cfg.op = "dr";
    cfg.estimators = false;
    const auto r = run_scenario(cfg);
    const auto report = Json::parse(r.report_json);
    CHECK(report["operator"] == "dr");
    CHECK(report["stop_reason"] == "fixed_point");
    CHECK(report.contains("measured_linear_c"));
    CHECK(!report.contains("dichotomy"));
}

TEST_CASE("svg plot clamps zero distances") {
    Trace t;
    t.x = {make_vector({1.0}), make_vector({0.0})};
    t.dist_target = {1.0, 0.0};
    const auto svg = render_svg(t, "a < b & c");
    CHECK(svg.find("a &lt; b &amp; c") != std::string::npos);
    CHECK(svg.find("1e-17") != std::string::npos);
}
