#include "fixpoint/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

std::optional<std::uint64_t> env_seed() {
    const char* s = std::getenv("FIXPOINT_SEED");
    if (!s || !*s) return std::nullopt;
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        std::cerr << "warning: ignoring malformed FIXPOINT_SEED=" << s << "\n";
        return std::nullopt;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fixed-point iterations, sequence diagnostics and regularity estimates"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run a scenario and write trace.csv, trace.json, report.json, plot.svg");
    std::string scenario, config_path, op = "ap", start;
    std::optional<int> max_iter;
    std::optional<std::uint64_t> seed;
    std::optional<double> delta, tol;
    std::optional<std::size_t> samples;
    std::optional<std::string> out;
    bool no_estimators = false;
    run->add_option("scenario", scenario, "Built-in scenario name or scenario JSON file");
    run->add_option("--config", config_path, "Run configuration JSON file");
    run->add_option("--max-iter", max_iter, "Iteration cap");
    run->add_option("--tol", tol, "Residual tolerance for the fixed-point stop");
    run->add_option("--seed", seed, "Seed for sampling");
    run->add_option("--delta", delta, "Estimator radius");
    run->add_option("--samples", samples, "Estimator sample count");
    run->add_option("--out", out, "Output directory");
    run->add_option("--op", op, "Operator")->check(CLI::IsMember({"ap", "dr"}));
    run->add_option("--start", start, "Starting point, comma separated");
    run->add_flag("--no-estimators", no_estimators, "Skip the regularity estimators");

    auto* verify = app.add_subcommand("verify", "Run an acceptance suite");
    std::string suite;
    std::optional<std::string> verify_out;
    verify->add_option("suite", suite, "paper_examples, convex_properties, necessity_bounds or all")->required();
    verify->add_option("--out", verify_out, "Directory for the suite report");
    verify->add_option("--seed", seed, "Seed");

    auto* estimate = app.add_subcommand("estimate", "Estimate a regularity constant on a scenario");
    std::string constant, est_scenario;
    estimate->add_option("constant", constant, "kappa, sr, sr_prime, sigma, violation or averaging")->required();
    estimate->add_option("scenario", est_scenario, "Scenario name or file")->required();
    estimate->add_option("--delta", delta, "Radius of the neighborhood");
    estimate->add_option("--samples", samples, "Sample count");
    estimate->add_option("--seed", seed, "Seed");

    CLI11_PARSE(app, argc, argv);
    if (const auto s = env_seed()) seed = s;

    using namespace fixpoint;
    if (*run) {
        RunConfig cfg;
        try {
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                if (!in) throw std::runtime_error("cannot read " + config_path);
                cfg = config_from_json(Json::parse(in));
            }
            if (!scenario.empty()) cfg.scenario = scenario;
            if (max_iter) cfg.max_iter = *max_iter;
            if (tol) cfg.residual_tol = *tol;
            if (seed) cfg.seed = *seed;
            if (delta) cfg.delta = *delta;
            if (samples) cfg.samples = *samples;
            if (out) cfg.out_dir = *out;
            if (!op.empty() && run->count("--op")) cfg.op = op;
            if (no_estimators) cfg.estimators = false;
            if (!start.empty()) {
                std::vector<double> xs;
                std::stringstream ss(start);
                for (std::string part; std::getline(ss, part, ',');) xs.push_back(std::stod(part));
                cfg.start = make_vector(xs);
            }
            // the same validation as a config file
            cfg = config_from_json(config_json(cfg));
        } catch (const nlohmann::json::parse_error& e) {
            std::cerr << "parse error: " << e.what() << "\n";
            return 1;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
        return cmd_run(cfg, std::cout, std::cerr);
    }
    if (*verify) return cmd_verify(suite, seed.value_or(0), verify_out, std::cout, std::cerr);
    return cmd_estimate(constant, est_scenario, delta, samples.value_or(20000), seed.value_or(0), std::cout,
                        std::cerr);
}
