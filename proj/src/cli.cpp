#include "fixpoint/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fixpoint {

namespace fs = std::filesystem;

RunConfig config_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("run config: expected an object");
    reject_unknown_keys(j,
                        {"scenario", "op", "max_iter", "residual_tol", "start", "diagnostics", "estimators", "delta",
                         "samples", "seed", "out_dir"},
                        "run config");
    RunConfig c;
    try {
        if (j.contains("scenario")) c.scenario = j.at("scenario").get<std::string>();
        if (j.contains("op")) c.op = j.at("op").get<std::string>();
        if (j.contains("max_iter")) c.max_iter = j.at("max_iter").get<int>();
        if (j.contains("residual_tol")) c.residual_tol = real_from_json(j.at("residual_tol"), "residual_tol");
        if (j.contains("start") && !j.at("start").is_null()) c.start = vector_from_json(j.at("start"), "start");
        if (j.contains("diagnostics")) c.diagnostics = j.at("diagnostics").get<bool>();
        if (j.contains("estimators")) c.estimators = j.at("estimators").get<bool>();
        if (j.contains("delta") && !j.at("delta").is_null()) c.delta = real_from_json(j.at("delta"), "delta");
        if (j.contains("samples")) c.samples = j.at("samples").get<std::size_t>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
    } catch (const nlohmann::json::type_error& e) {
        throw SchemaError(std::string("run config: ") + e.what());
    }
    if (c.op != "ap" && c.op != "dr") throw SchemaError("run config: op must be \"ap\" or \"dr\"");
    if (c.max_iter < 1) throw SchemaError("run config: max_iter must be >= 1");
    if (!(c.residual_tol >= 0.0)) throw SchemaError("run config: residual_tol must be >= 0");
    if (c.delta && !(*c.delta > 0.0)) throw SchemaError("run config: delta must be > 0");
    if (c.samples == 0) throw SchemaError("run config: samples must be > 0");
    return c;
}

Json config_json(const RunConfig& c) {
    return {{"scenario", c.scenario},
            {"op", c.op},
            {"max_iter", c.max_iter},
            {"residual_tol", real_json(c.residual_tol)},
            {"start", c.start ? vector_json(*c.start) : Json(nullptr)},
            {"diagnostics", c.diagnostics},
            {"estimators", c.estimators},
            {"delta", c.delta ? real_json(*c.delta) : Json(nullptr)},
            {"samples", c.samples},
            {"seed", c.seed},
            {"out_dir", c.out_dir}};
}

Scenario load_scenario(const std::string& name_or_path) {
    const auto names = builtin_names();
    if (std::find(names.begin(), names.end(), name_or_path) != names.end()) return build(name_or_path);
    if (name_or_path.rfind("geometric_n", 0) == 0 && name_or_path.size() > 11 &&
        name_or_path.find_first_not_of("0123456789", 11) == std::string::npos)
        return geometric(std::stoi(name_or_path.substr(11)));
    std::ifstream in(name_or_path);
    if (!in) throw DomainError("no built-in scenario or readable file named \"" + name_or_path + "\"");
    return scenario_from_json(Json::parse(in));
}

namespace {

std::string fixed(double v, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

Vector default_start(const Scenario& s, std::uint64_t seed) {
    if (s.start) return *s.start;
    const auto pts = sample_on_set(s.A, s.seed_region, s.lambda, 1, seed);
    return pts.empty() ? s.base_point : pts.front();
}

// Probe for the Fejér check: nearest points of A ∩ B to region samples, the
// limit's nearest point, and any witness listed with the scenario.
Points fejer_probe(const Scenario& s, const Trace& t, std::uint64_t seed) {
    Points probe;
    for (const auto& p : sample_region(s.seed_region, s.lambda, 64, seed)) probe.push_back(nearest(s.intersection, p));
    probe.push_back(nearest(s.intersection, t.x.back()));
    if (const auto* e = s.find("fejer_witness"); e && std::holds_alternative<Points>(e->value))
        for (const auto& w : std::get<Points>(e->value)) probe.push_back(w);
    return probe;
}

struct Check {
    std::string key;
    Json expected;
    Json measured;
    double tolerance = 0.0;
    bool pass = false;
};

} // namespace

RunOutputs run_scenario(const RunConfig& cfg) {
    const Scenario s = load_scenario(cfg.scenario);
    const bool is_ap = cfg.op == "ap";
    const OperatorSpec op = is_ap ? OperatorSpec::ap(s.A, s.B) : OperatorSpec::dr(s.A, s.B);

    Trace t;
    if (s.sequence) {
        t = trace_from_sequence(*s.sequence, s.intersection);
    } else {
        IterationConfig ic;
        ic.start = cfg.start ? *cfg.start : default_start(s, cfg.seed);
        ic.max_iter = cfg.max_iter;
        ic.residual_tol = cfg.residual_tol;
        ic.lambda = s.lambda;
        ic.target = s.intersection;
        t = run(op, ic);
    }

    Json measured = Json::object();
    Json details = Json::object();
    std::map<std::string, double> scalars;
    std::map<std::string, Vector> points;
    auto put = [&](const std::string& key, double v) {
        scalars[key] = v;
        measured["measured_" + key] = real_json(v);
    };

    const Vector& last = t.x.back();
    const double last_dist = distance(s.intersection, last);
    measured["iterations"] = t.x.size() - 1;
    measured["stop_reason"] = std::string(to_string(t.stop_reason));
    measured["limit"] = vector_json(last);
    measured["dist_limit_to_intersection"] = real_json(last_dist);
    points["stuck_points"] = last;
    for (std::size_t k = 0; k < t.dist_target.size(); ++k)
        if (t.dist_target[k] <= 1e-12) {
            put("iterations_to_solve", static_cast<double>(k));
            break;
        }

    if (cfg.diagnostics && t.x.size() >= 2) {
        const auto mono = check_linear_monotone(t, s.intersection);
        put("linear_c", mono.linear_c);
        details["monotonicity"] = monotonicity_json(mono);

        const auto fejer = check_fejer(t, fejer_probe(s, t, cfg.seed));
        put("fejer", fejer.fejer ? 1.0 : 0.0);
        if (fejer.witness) points["fejer_witness"] = *fejer.witness;
        details["fejer"] = {{"fejer", fejer.fejer},
                            {"index", fejer.index ? Json(*fejer.index) : Json(nullptr)},
                            {"witness", fejer.witness ? vector_json(*fejer.witness) : Json(nullptr)}};

        // A limit that lies in an exactly known A ∩ B is replaced by its
        // nearest point there, which removes the stopping error from the rates.
        Vector limit = last;
        if (s.intersection.is_exact() && last_dist <= 1e-9) limit = nearest(s.intersection, last);
        try {
            const auto q = estimate_q_rate(t, limit);
            put("q_rate", q.c);
            details["q_rate"] = rate_json(q);
        } catch (const DomainError& e) {
            details["q_rate"] = {{"unavailable", e.what()}};
        }
        try {
            const auto r = estimate_r_rate(t, limit);
            put("r_rate", r.c);
            details["r_rate"] = rate_json(r);
        } catch (const DomainError& e) {
            details["r_rate"] = {{"unavailable", e.what()}};
        }
        if (t.z.size() >= 4) {
            const auto ext = check_linear_extendible(t.z, 2);
            if (ext.holds) put("extendible_c", ext.c);
            details["extendibility"] = extendibility_json(ext);
        }
        if (is_ap && !s.sequence && s.A.is_convex() && s.B.is_convex() && !t.b.empty()) {
            const auto d = check_convex_dichotomy(t);
            measured["dichotomy"] = std::string(to_string(d.kind));
            details["dichotomy"] = dichotomy_json(d);
        }
    }

    if (cfg.estimators) {
        const double delta = cfg.delta ? *cfg.delta : s.seed_region.radius;
        const auto srp = estimate_sr_prime(s.A, s.B, s.intersection, s.base_point, delta, s.lambda, cfg.samples, cfg.seed);
        const auto sr = estimate_sr(s.A, s.B, s.intersection, s.base_point, delta, s.lambda, cfg.samples, cfg.seed);
        put("sr_prime", srp.value);
        put("sr", sr.value);
        details["sr_prime"] = estimate_json(srp);
        details["sr"] = estimate_json(sr);
        SampleDomain dom{{s.base_point, delta}, s.lambda, s.A, std::nullopt, cfg.samples, cfg.seed};
        const auto kappa = estimate_kappa(op, s.intersection, dom);
        put("kappa", kappa.value);
        details["kappa"] = estimate_json(kappa);
    }

    std::vector<Check> checks;
    std::vector<std::string> mismatches;
    for (const auto& [key, exp] : s.expected) {
        Check c{key, nullptr, nullptr, exp.tolerance, false};
        if (const double* v = std::get_if<double>(&exp.value)) {
            const auto m = scalars.find(key);
            if (m == scalars.end()) continue;
            c.expected = real_json(*v);
            c.measured = real_json(m->second);
            c.pass = std::abs(m->second - *v) <= exp.tolerance || m->second == *v;
        } else {
            const auto m = points.find(key);
            if (m == points.end()) continue;
            const auto& list = std::get<Points>(exp.value);
            c.expected = points_json(list);
            c.measured = vector_json(m->second);
            c.pass = std::any_of(list.begin(), list.end(), [&](const Vector& p) {
                return p.size() == m->second.size() && (p - m->second).norm() <= std::max(exp.tolerance, 1e-9);
            });
        }
        if (!c.pass) mismatches.push_back(key);
        checks.push_back(std::move(c));
    }

    Json checks_json = Json::array();
    for (const auto& c : checks)
        checks_json.push_back({{"key", c.key},
                               {"expected", c.expected},
                               {"measured", c.measured},
                               {"tolerance", real_json(c.tolerance)},
                               {"provenance", std::string(to_string(s.find(c.key)->provenance))},
                               {"pass", c.pass}});

    Json report{{"scenario", s.name}, {"operator", cfg.op}, {"config", config_json(cfg)}};
    for (auto& [k, v] : measured.items()) report[k] = v;
    report["details"] = std::move(details);
    report["checks"] = std::move(checks_json);
    report["status"] = mismatches.empty() ? "ok" : "mismatch";

    RunOutputs out;
    out.trace_csv = trace_csv(t);
    out.trace_json = trace_json(t).dump(2) + "\n";
    out.report_json = report.dump(2) + "\n";
    out.plot_svg = render_svg(t, s.name + " (" + cfg.op + ")");
    out.mismatches = std::move(mismatches);
    return out;
}

std::string render_svg(const Trace& t, const std::string& title) {
    constexpr double W = 640, H = 400, L = 60, R = 20, T = 40, B = 40;
    constexpr double kFloor = 1e-17;
    std::vector<double> ys;
    for (double d : t.dist_target) ys.push_back(std::log10(std::max(d, kFloor)));
    if (ys.empty()) ys.push_back(std::log10(kFloor));
    double lo = *std::min_element(ys.begin(), ys.end()), hi = *std::max_element(ys.begin(), ys.end());
    lo = std::floor(lo);
    hi = std::ceil(hi);
    if (hi <= lo) hi = lo + 1.0;
    const double kmax = std::max<double>(1.0, static_cast<double>(ys.size() - 1));
    auto px = [&](double k) { return L + (W - L - R) * k / kmax; };
    auto py = [&](double y) { return T + (H - T - B) * (hi - y) / (hi - lo); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 "
       << W << ' ' << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
       << escape_xml(title) << "</text>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    const int step = std::max(1, static_cast<int>(std::ceil((hi - lo) / 8.0)));
    for (int e = static_cast<int>(lo); e <= static_cast<int>(hi); e += step) {
        os << "<text x=\"" << L - 6 << "\" y=\"" << fixed(py(e) + 4) << "\" text-anchor=\"end\" font-family=\"sans-serif\""
           << " font-size=\"10\">1e" << e << "</text>\n";
    }
    os << "<text x=\"" << W / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\" font-family=\"sans-serif\""
       << " font-size=\"11\">k (last = " << ys.size() - 1 << ")</text>\n";
    os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < ys.size(); ++k) {
        if (k) os << ' ';
        os << fixed(px(static_cast<double>(k))) << ',' << fixed(py(ys[k]));
    }
    os << "\"/>\n</svg>\n";
    return os.str();
}

namespace {

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + p.string() + " for writing");
    f << content;
    if (!f) throw std::runtime_error("failed writing " + p.string());
}

} // namespace

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const auto r = run_scenario(cfg);
        const fs::path dir(cfg.out_dir);
        fs::create_directories(dir);
        write_file(dir / "trace.csv", r.trace_csv);
        write_file(dir / "trace.json", r.trace_json);
        write_file(dir / "report.json", r.report_json);
        write_file(dir / "plot.svg", r.plot_svg);

        const auto report = Json::parse(r.report_json);
        out << "scenario " << report["scenario"].get<std::string>() << ": " << report["stop_reason"].get<std::string>()
            << " after " << report["iterations"] << " iterations\n";
        auto brief = [](const Json& j) {
            auto s = j.dump();
            return s.size() > 60 ? s.substr(0, 57) + "..." : s;
        };
        for (const auto& c : report["checks"]) {
            out << "  " << std::left << std::setw(22) << c["key"].get<std::string>() << std::setw(6)
                << (c["pass"].get<bool>() ? "ok" : "FAIL") << " measured " << brief(c["measured"]) << ", expected "
                << brief(c["expected"]) << "\n";
        }
        out << "wrote " << (dir / "report.json").string() << "\n";
        if (!r.mismatches.empty()) {
            err << "expectation mismatch:";
            for (const auto& k : r.mismatches) err << ' ' << k;
            err << "\n";
            return 2;
        }
        return 0;
    } catch (const nlohmann::json::parse_error& e) {
        err << "parse error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return 1;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, const std::optional<std::string>& out_dir,
               std::ostream& out, std::ostream& err) {
    try {
        const auto ids = suite_criteria(suite);
        Json reports = Json::array();
        bool all = true;
        for (int id : ids) {
            const auto r = run_criterion(id, seed);
            all = all && r.pass;
            out << std::right << std::setw(2) << r.id << "  " << (r.pass ? "PASS" : "FAIL") << "  " << r.title << "  ["
                << r.summary << "]\n";
            reports.push_back(r.report);
        }
        if (out_dir) {
            fs::create_directories(*out_dir);
            write_file(fs::path(*out_dir) / ("verify_" + suite + ".json"), reports.dump(2) + "\n");
        }
        return all ? 0 : 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_estimate(const std::string& constant, const std::string& scenario, std::optional<double> delta,
                 std::size_t samples, std::uint64_t seed, std::ostream& out, std::ostream& err) {
    try {
        const Scenario s = load_scenario(scenario);
        const double d = delta ? *delta : s.seed_region.radius;
        if (!(d > 0.0)) throw DomainError("delta must be > 0");
        const auto op = OperatorSpec::ap(s.A, s.B);
        const SampleDomain dom{{s.base_point, d}, s.lambda, s.A, std::nullopt, samples, seed};
        RegularityEstimate e;
        if (constant == "kappa")
            e = estimate_kappa(op, s.intersection, dom);
        else if (constant == "sr")
            e = estimate_sr(s.A, s.B, s.intersection, s.base_point, d, s.lambda, samples, seed);
        else if (constant == "sr_prime")
            e = estimate_sr_prime(s.A, s.B, s.intersection, s.base_point, d, s.lambda, samples, seed);
        else if (constant == "sigma")
            e = estimate_sigma(s.A, s.B, s.base_point, d, samples, seed);
        else if (constant == "violation")
            e = estimate_violation(op, s.base_point, 2.0 / 3.0, dom);
        else if (constant == "averaging")
            e = estimate_averaging(op, s.base_point, dom);
        else
            throw DomainError("unknown constant \"" + constant +
                              "\" (kappa, sr, sr_prime, sigma, violation, averaging)");
        out << estimate_json(e).dump(2) << "\n";
        return 0;
    } catch (const nlohmann::json::parse_error& e) {
        err << "parse error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return 1;
}

} // namespace fixpoint
