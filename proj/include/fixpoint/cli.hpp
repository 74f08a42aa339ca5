#pragma once

// Library side of the command-line front end: run configuration, the
// scenario runner that produces every output file, and the three commands.

#include "fixpoint/verify.hpp"

#include <iosfwd>

namespace fixpoint {

struct RunConfig {
    std::string scenario = "two_lines_pi3"; // built-in name or path to a scenario JSON file
    std::string op = "ap";                  // "ap" or "dr"
    int max_iter = 100000;
    double residual_tol = 1e-12;
    std::optional<Vector> start;            // overrides the scenario start
    bool diagnostics = true;
    bool estimators = true;
    std::optional<double> delta;            // estimator radius; default: scenario seed region
    std::size_t samples = 20000;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
};

/// Fields as in RunConfig; unknown keys rejected with SchemaError.
RunConfig config_from_json(const Json& j);
Json config_json(const RunConfig& c);

/// Built-in scenario by name, otherwise a scenario JSON file.
Scenario load_scenario(const std::string& name_or_path);

struct RunOutputs {
    std::string trace_csv;
    std::string trace_json;
    std::string report_json;
    std::string plot_svg;
    std::vector<std::string> mismatches; // expected keys outside tolerance
};

RunOutputs run_scenario(const RunConfig& cfg);

/// Polyline of log10 dist_target against k.
std::string render_svg(const Trace& t, const std::string& title);

/// Exit codes: 0 ok, 2 expectation mismatch, 1 error.
int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& suite, std::uint64_t seed, const std::optional<std::string>& out_dir,
               std::ostream& out, std::ostream& err);
int cmd_estimate(const std::string& constant, const std::string& scenario, std::optional<double> delta,
                 std::size_t samples, std::uint64_t seed, std::ostream& out, std::ostream& err);

} // namespace fixpoint
