#include "fixpoint/verify.hpp"

#include "fixpoint/cli.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace fixpoint {

namespace {

std::string num(double v) {
    std::ostringstream os;
    os.precision(8);
    os << v;
    return os.str();
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

Trace ap_trace(const Scenario& s, const Vector& start, int max_iter = 100000, double tol = 1e-12) {
    IterationConfig cfg;
    cfg.start = start;
    cfg.max_iter = max_iter;
    cfg.residual_tol = tol;
    cfg.lambda = s.lambda;
    cfg.target = s.intersection;
    return run(OperatorSpec::ap(s.A, s.B), cfg);
}

std::optional<std::size_t> iterations_to_solve(const Trace& t, double tol = 1e-12) {
    for (std::size_t k = 0; k < t.dist_target.size(); ++k)
        if (t.dist_target[k] <= tol) return k;
    return std::nullopt;
}

// Measured R-rate of a trace; finite termination counts as rate 0.
double measured_r_rate(const Trace& t) {
    try {
        return estimate_r_rate(t).c;
    } catch (const DomainError&) {
        if (t.stop_reason == StopReason::FixedPoint) return 0.0;
        throw;
    }
}

Points starts_on_A(const Scenario& s, std::size_t count, std::uint64_t seed) {
    return sample_on_set(s.A, s.seed_region, s.lambda, count, seed);
}

CriterionResult result(int id, std::string title, bool pass, std::string summary, Json report) {
    report["criterion"] = id;
    report["pass"] = pass;
    return {id, std::move(title), pass, std::move(summary), std::move(report)};
}

// 1 ---------------------------------------------------------------------------
CriterionResult sr_bracket_on_lines(std::uint64_t seed) {
    const auto s = build("two_lines_pi3");
    const auto srp = estimate_sr_prime(s.A, s.B, s.intersection, s.base_point, 1.0, s.lambda, 20000, seed);
    const auto sr = estimate_sr(s.A, s.B, s.intersection, s.base_point, 1.0, s.lambda, 20000, seed);
    const double want_srp = 2.0 / std::sqrt(3.0);
    const bool ok_srp = near(srp.value, want_srp, 1e-3);
    const bool ok_sr = near(sr.value, 2.0, 1e-2);
    const bool strict = srp.value < sr.value && sr.value < 1.0 + 2.0 * srp.value;
    const bool bracket = verify_bracket(sr, srp);
    Json rep{{"sr_prime", estimate_json(srp)}, {"sr", estimate_json(sr)},
             {"strict_bracket", strict}, {"bracket", bracket}};
    return result(1, "two lines pi/3: sr' = 2/sqrt3, sr = 2, strict bracket", ok_srp && ok_sr && strict && bracket,
                  "sr'=" + num(srp.value) + " sr=" + num(sr.value) + " bracket " + (strict ? "strict" : "FAILS"),
                  std::move(rep));
}

// 2 ---------------------------------------------------------------------------
CriterionResult rates_on_lines(std::uint64_t seed) {
    const auto s = build("two_lines_pi3");
    const auto t = ap_trace(s, *s.start);
    const Vector origin = make_vector({0.0, 0.0});
    const auto q = estimate_q_rate(t, origin);
    const auto mono = check_linear_monotone(t, s.intersection);
    SampleDomain d{{s.base_point, 1.0}, s.lambda, s.A, std::nullopt, 20000, seed};
    const auto kappa = estimate_kappa(OperatorSpec::ap(s.A, s.B), s.intersection, d);
    const double bound = necessity_bound(NecessityKind::Msr, mono.linear_c);
    const bool ok = near(q.c, 0.25, 1e-6) && near(mono.linear_c, 0.25, 1e-6) &&
                    near(kappa.value, 4.0 / 3.0, 1e-3) && kappa.value <= bound + 1e-3 &&
                    near(kappa.value, bound, 1e-3);
    Json rep{{"q_rate", rate_json(q)}, {"monotonicity", monotonicity_json(mono)},
             {"kappa", estimate_json(kappa)}, {"necessity_bound", bound}};
    return result(2, "two lines pi/3: Q-rate, monotonicity, kappa, tight necessity bound", ok,
                  "q=" + num(q.c) + " c=" + num(mono.linear_c) + " kappa=" + num(kappa.value) +
                      " 1/(1-c)=" + num(bound),
                  std::move(rep));
}

// 3 ---------------------------------------------------------------------------
CriterionResult monotone_not_fejer(std::uint64_t) {
    const auto s = build("monotone_not_fejer");
    const auto t = trace_from_sequence(*s.sequence, s.intersection);
    const auto mono = check_linear_monotone(t, s.intersection);
    const Vector w = make_vector({2.0, 0.0});
    const auto fejer = check_fejer(t, {w});
    const bool ok = mono.linear_c == 0.5 && !fejer.fejer && fejer.witness && *fejer.witness == w;
    Json rep{{"monotonicity", monotonicity_json(mono)},
             {"fejer", fejer.fejer},
             {"witness", fejer.witness ? vector_json(*fejer.witness) : Json(nullptr)},
             {"violating_index", fejer.index ? Json(*fejer.index) : Json(nullptr)}};
    return result(3, "monotone-not-Fejer sequence: c = 1/2 exactly, Fejer fails at (2,0)", ok,
                  "c=" + num(mono.linear_c) + " fejer=" + (fejer.fejer ? "true" : "false"), std::move(rep));
}

// 4 ---------------------------------------------------------------------------
CriterionResult geometric_iterations(std::uint64_t) {
    bool ok = true;
    Json runs = Json::array();
    std::string summary;
    for (int n = 1; n <= 3; ++n) {
        const auto s = geometric(n);
        const auto t = ap_trace(s, *s.start);
        const auto solved = iterations_to_solve(t);
        const bool pass = solved && *solved == static_cast<std::size_t>(n) &&
                          t.stop_reason == StopReason::FixedPoint && t.x.size() == static_cast<std::size_t>(n) + 1;
        ok = ok && pass;
        runs.push_back({{"n", n},
                        {"iterations_to_solve", solved ? Json(*solved) : Json(nullptr)},
                        {"iterates", points_json(t.x)},
                        {"pass", pass}});
        summary += "n=" + std::to_string(n) + ":" + (solved ? std::to_string(*solved) : std::string("never")) + " ";
    }
    return result(4, "geometric finite sets: exactly n iterations for n = 1, 2, 3", ok, summary, {{"runs", runs}});
}

// 5 ---------------------------------------------------------------------------
std::optional<int> stuck_index(const Vector& x) {
    if (std::abs(x[1]) > 1e-12 || !(x[0] > 0.0)) return std::nullopt;
    const int n = static_cast<int>(std::lround(-std::log2(x[0])));
    if (n < 0 || std::abs(x[0] - std::ldexp(1.0, -n)) > 1e-12) return std::nullopt;
    return n;
}

CriterionResult sawtooth_stuck(std::uint64_t seed) {
    const auto s = build("sawtooth");
    const Points seeds{make_vector({0.09, 0.03}), make_vector({0.3, 0.1}),   make_vector({0.7, -0.1}),
                       make_vector({0.2, -0.05}), make_vector({0.45, 0.2}),  make_vector({0.02, 0.0}),
                       make_vector({0.9, 0.3}),   make_vector({0.12, 0.04})};
    std::size_t stuck = 0;
    bool all_ok = true;
    Json runs = Json::array();
    for (const auto& x0 : seeds) {
        const auto t = ap_trace(s, x0);
        const Vector& lim = t.x.back();
        const auto n = stuck_index(lim);
        const double res = t.residual.back();
        const double dist = distance(s.intersection, lim);
        const bool pass = t.stop_reason == StopReason::FixedPoint && n && res <= 1e-12 &&
                          dist >= std::ldexp(1.0, -(*n + 2));
        if (pass) ++stuck;
        all_ok = all_ok && pass;
        runs.push_back({{"seed", vector_json(x0)},
                        {"limit", vector_json(lim)},
                        {"n", n ? Json(*n) : Json(nullptr)},
                        {"residual", real_json(res)},
                        {"dist_to_intersection", real_json(dist)},
                        {"pass", pass}});
    }
    const auto e1 = estimate_sr_prime(s.A, s.B, s.intersection, s.base_point, 0.5, s.lambda, 10000, seed);
    const auto e2 = estimate_sr_prime(s.A, s.B, s.intersection, s.base_point, 0.5, s.lambda, 20000, seed);
    const bool finite = std::isfinite(e1.value) && std::isfinite(e2.value);
    const bool stable = finite && std::abs(e2.value - e1.value) <= 0.1 * e1.value;
    const bool ok = all_ok && stuck >= 5 && stable;
    Json rep{{"runs", runs}, {"sr_prime", estimate_json(e1)}, {"sr_prime_doubled", estimate_json(e2)}};
    return result(5, "sawtooth: AP stuck at (1/2^n, 0); finite sr' stable under doubling", ok,
                  std::to_string(stuck) + "/" + std::to_string(seeds.size()) + " seeds stuck; sr'=" + num(e1.value) +
                      " -> " + num(e2.value),
                  std::move(rep));
}

// 6 ---------------------------------------------------------------------------
CriterionResult convex_dichotomy(std::uint64_t seed) {
    std::size_t one = 0, never = 0, trivial = 0, failures = 0;
    Json fails = Json::array();
    for (int i = 0; i < 200; ++i) {
        const auto s = corpus_pair(i, seed);
        const auto starts = starts_on_A(s, 1, seed + 7919 * static_cast<std::uint64_t>(i));
        const Vector x0 = starts.empty() ? s.base_point : starts.front();
        const auto t = ap_trace(s, x0, 10000);
        const auto d = check_convex_dichotomy(t);
        switch (d.kind) {
        case Dichotomy::SolvedInOne: ++one; break;
        case Dichotomy::StartsSolved: ++trivial; break;
        case Dichotomy::NeverReaches: ++never; break;
        }
        if (d.kind == Dichotomy::NeverReaches && !d.bound_holds) {
            ++failures;
            fails.push_back({{"pair", s.name}, {"report", dichotomy_json(d)}});
        }
    }
    Json rep{{"pairs", 200}, {"solved_in_one", one}, {"never_reaches", never},
             {"starts_solved", trivial}, {"failures", fails}};
    return result(6, "convex dichotomy over 200 random pairs", failures == 0,
                  std::to_string(one) + " solved in one, " + std::to_string(never) + " never reach (bound checked), " +
                      std::to_string(trivial) + " start solved",
                  std::move(rep));
}

// 7 ---------------------------------------------------------------------------
CriterionResult projection_lemmas(std::uint64_t seed) {
    constexpr int kPairs = 50, kPerPair = 200;
    std::size_t bas_fail = 0, tec_fail = 0, queries = 0;
    double bas_worst = -1.0, tec_worst = -1.0; // largest relative shortfall
    for (int i = 0; i < kPairs; ++i) {
        const auto s = corpus_pair(i, seed);
        const Region wide{s.base_point, 2.0};
        const Points ps = sample_region(wide, Lambda::whole(), 2 * kPerPair, seed + 104729 * static_cast<std::uint64_t>(i));
        for (int q = 0; q < kPerPair; ++q) {
            ++queries;
            const Vector x = project_one(s.A, ps[2 * q]);
            const Vector pb = project_one(s.B, x);
            const Vector papb = project_one(s.A, pb);
            const Vector pbpapb = project_one(s.B, papb);
            const Vector w = nearest(s.intersection, ps[2 * q + 1]);
            // lengths at the rounding level of the coordinates count as zero
            const double scale = std::max({1.0, x.norm(), w.norm()});
            auto len = [&](const Vector& u, const Vector& v) {
                const double d = (u - v).norm();
                return d < 1e-12 * scale ? 0.0 : d;
            };
            const double step = len(papb, pb);
            const double lhs = len(pbpapb, papb) * len(pb, x);
            const double rhs = step * step;
            const double short1 = (rhs - lhs) / std::max({lhs, rhs, 1e-300});
            bas_worst = std::max(bas_worst, short1);
            if (short1 > 1e-9) ++bas_fail;

            const double lhs2 = len(pb, w) * len(pb, x);
            const double rhs2 = len(x, w) * step;
            const double short2 = (rhs2 - lhs2) / std::max({lhs2, rhs2, 1e-300});
            tec_worst = std::max(tec_worst, short2);
            if (short2 > 1e-9) ++tec_fail;
        }
    }
    Json rep{{"queries", queries},
             {"baslem_failures", bas_fail},
             {"baslem_worst_relative_shortfall", real_json(bas_worst)},
             {"tec_lem_2_failures", tec_fail},
             {"tec_lem_2_worst_relative_shortfall", real_json(tec_worst)}};
    return result(7, "non-decreasing rate lemma and technical lemma on 10^4 queries each", bas_fail == 0 && tec_fail == 0,
                  std::to_string(queries) + " queries; worst shortfall " + num(bas_worst) + " / " + num(tec_worst),
                  std::move(rep));
}

// 8 ---------------------------------------------------------------------------
CriterionResult convex_loop(std::uint64_t seed) {
    std::size_t fail_i = 0, fail_ii = 0;
    double worst_i = -1.0, worst_ii = -1.0;
    Json pairs = Json::array();
    for (int i = 0; i < 100; ++i) {
        const auto s = corpus_pair(i, seed);
        const auto op = OperatorSpec::ap(s.A, s.B);
        const auto srp = estimate_sr_prime(s.A, s.B, s.intersection, s.base_point, s.seed_region.radius, s.lambda,
                                           4000, seed + static_cast<std::uint64_t>(i));
        Points seeds;
        if (srp.argmax) seeds.push_back(*srp.argmax);
        for (auto& p : starts_on_A(s, 15, seed + 1000 + static_cast<std::uint64_t>(i))) seeds.push_back(std::move(p));
        double c_lin = 0.0, c_r = 0.0;
        for (const auto& x0 : seeds) {
            const auto t = ap_trace(s, x0, 20000);
            if (t.x.size() < 2) continue;
            c_lin = std::max(c_lin, check_linear_monotone(t, s.intersection).linear_c);
            c_r = std::max(c_r, measured_r_rate(t));
        }
        const double suff = srp.value > 0.0 ? 1.0 - 1.0 / (srp.value * srp.value) : 0.0;
        const double nec = c_r < 1.0 ? 1.0 / (1.0 - c_r) : std::numeric_limits<double>::infinity();
        const bool ok_i = c_lin <= suff + 1e-2;
        const bool ok_ii = srp.value <= nec + 1e-2;
        worst_i = std::max(worst_i, c_lin - suff);
        worst_ii = std::max(worst_ii, srp.value - nec);
        if (!ok_i) ++fail_i;
        if (!ok_ii) ++fail_ii;
        pairs.push_back({{"pair", s.name}, {"sr_prime", real_json(srp.value)}, {"linear_c", real_json(c_lin)},
                         {"sufficiency_bound", real_json(suff)}, {"r_rate", real_json(c_r)},
                         {"necessity_bound", real_json(nec)}, {"pass", ok_i && ok_ii}});
    }
    Json rep{{"pairs", pairs}, {"worst_sufficiency_excess", real_json(worst_i)},
             {"worst_necessity_excess", real_json(worst_ii)}};
    return result(8, "convex sufficiency (c <= 1 - sr'^-2) and necessity (sr' <= 1/(1-c)) on 100 pairs",
                  fail_i == 0 && fail_ii == 0,
                  "failures " + std::to_string(fail_i) + "/" + std::to_string(fail_ii) + "; worst excess " +
                      num(worst_i) + " / " + num(worst_ii),
                  std::move(rep));
}

// 9, 10 -----------------------------------------------------------------------
struct ConvexTrace {
    std::string name;
    Trace trace;
    Vector limit;
};

// AP traces run to floating-point stagnation so the limit is accurate enough
// for ratio statistics down to the window floor.
std::vector<ConvexTrace> convex_traces(std::uint64_t seed) {
    std::vector<ConvexTrace> out;
    auto add = [&](const Scenario& s, const Vector& x0) {
        auto t = ap_trace(s, x0, 100000, 1e-15);
        Vector lim = t.x.back();
        out.push_back({s.name, std::move(t), std::move(lim)});
    };
    const auto lines = build("two_lines_pi3");
    add(lines, *lines.start);
    for (int i = 0; i < 60; ++i) {
        const auto s = corpus_pair(i, seed);
        for (const auto& x0 : starts_on_A(s, 4, seed + 500 + static_cast<std::uint64_t>(i))) add(s, x0);
    }
    return out;
}

constexpr double kWindowFloor = 1e-6;

CriterionResult q_implies_extendible(std::uint64_t seed) {
    std::size_t certified = 0, failures = 0;
    double worst = -1.0;
    Json fails = Json::array();
    for (const auto& ct : convex_traces(seed)) {
        const auto& t = ct.trace;
        RateEstimate q;
        try {
            q = estimate_q_rate(t.x, ct.limit, kWindowFloor * std::max(1.0, ct.limit.norm()));
        } catch (const DomainError&) {
            continue;
        }
        if (q.c >= 1.0) continue;
        const std::size_t len = std::min(t.z.size(), std::max<std::size_t>(2 * q.window_end, 4));
        if (len < 4) continue;
        ++certified;
        const auto ext = check_linear_extendible(Points(t.z.begin(), t.z.begin() + static_cast<long>(len)), 2);
        const bool ok = ext.holds && ext.c <= q.c + 1e-9;
        worst = std::max(worst, ext.c - q.c);
        if (!ok) {
            ++failures;
            fails.push_back({{"trace", ct.name}, {"q", real_json(q.c)}, {"extendibility", extendibility_json(ext)}});
        }
    }
    Json rep{{"certified_traces", certified}, {"failures", fails}, {"worst_excess", real_json(worst)},
             {"window_floor", kWindowFloor}};
    return result(9, "Q-linear convex traces are linearly extendible (m = 2) at the same rate",
                  failures == 0 && certified > 0,
                  std::to_string(certified) + " certified traces; worst ext-minus-Q " + num(worst), std::move(rep));
}

CriterionResult extendible_implies_r(std::uint64_t seed) {
    std::size_t checked = 0, failures = 0;
    Json fails = Json::array();
    auto check = [&](const std::string& name, const Points& z, const Points& xs, const Vector& limit,
                     std::size_t len) {
        if (len < 4) return;
        const auto ext = check_linear_extendible(Points(z.begin(), z.begin() + static_cast<long>(len)), 2);
        if (!ext.holds) return;
        ++checked;
        const auto bad = r_certificate_failure(errors_to(xs, limit), ext.c, ext.gamma);
        if (bad) {
            ++failures;
            fails.push_back({{"trace", name}, {"index", *bad}, {"extendibility", extendibility_json(ext)}});
        }
    };
    for (const auto& ct : convex_traces(seed)) {
        const auto& t = ct.trace;
        const auto e = errors_to(t.x, ct.limit);
        std::size_t end = 0;
        while (end < e.size() && e[end] > kWindowFloor * std::max(1.0, ct.limit.norm())) ++end;
        check(ct.name, t.z, t.x, ct.limit, std::min(t.z.size(), std::max<std::size_t>(2 * end, 4)));
    }
    const auto g = geometric(2);
    const auto tg = ap_trace(g, *g.start);
    check(g.name, tg.z, tg.x, tg.x.back(), tg.z.size());
    Json rep{{"checked", checked}, {"failures", fails}};
    return result(10, "linear extendibility gives the R-certificate gamma = m d0/(1-c)", failures == 0 && checked > 0,
                  std::to_string(checked) + " extendible traces, " + std::to_string(failures) + " certificate failures",
                  std::move(rep));
}

// 11 --------------------------------------------------------------------------
CriterionResult epigraph_local_global(std::uint64_t seed) {
    const auto s = build("epigraph");
    const auto e1 = estimate_sr_prime(s.A, s.B, s.intersection, s.base_point, 0.5, s.lambda, 10000, seed);
    const auto e2 = estimate_sr_prime(s.A, s.B, s.intersection, s.base_point, 0.5, s.lambda, 20000, seed);
    const bool local_ok = std::isfinite(e1.value) && std::abs(e2.value - e1.value) <= 1e-2 &&
                          near(e2.value, std::sqrt(2.0), 1e-2);

    // graph points (t, t^2) with the nearest parameter halving each round
    Json rounds = Json::array();
    bool doubles = true;
    double prev = 0.0;
    for (int j = 0; j <= 10; ++j) {
        const double t_min = 0.1 * std::ldexp(1.0, -j);
        double ratio = 0.0;
        for (int i = 0; i <= j; ++i) {
            const double t = 0.1 * std::ldexp(1.0, -i);
            const Vector x = make_vector({t, t * t});
            ratio = std::max(ratio, distance(s.intersection, x) / distance(s.B, x));
        }
        double factor = j == 0 ? 0.0 : ratio / prev;
        // sampling slack 1e-2: the exact factor is 2 sqrt(1+t^2/4)/sqrt(1+t^2), just under 2
        if (j > 0 && factor < 2.0 * (1.0 - 1e-2)) doubles = false;
        rounds.push_back({{"t_min", t_min}, {"ratio", ratio}, {"factor", j == 0 ? Json(nullptr) : Json(factor)}});
        prev = ratio;
    }
    const auto global = check_global_subtransversality(s.A, s.B, s.intersection, {s.base_point, 2.0}, 0.5,
                                                       20000, seed);
    Json rep{{"local_sr_prime", estimate_json(e1)},
             {"local_sr_prime_doubled", estimate_json(e2)},
             {"global_rounds", rounds},
             {"global_check_c_half", {{"holds", global.holds}, {"max_ratio", real_json(global.max_ratio)}}}};
    return result(11, "epigraph: local sr' finite and stable, global ratio doubles as t halves",
                  local_ok && doubles && !global.holds,
                  "local sr'=" + num(e1.value) + " -> " + num(e2.value) + "; global ratio " +
                      num(rounds.front()["ratio"].get<double>()) + " -> " + num(prev),
                  std::move(rep));
}

// 12 --------------------------------------------------------------------------
CriterionResult rate_ordering(std::uint64_t seed) {
    constexpr double alpha = 2.0 / 3.0; // P_A P_B is averaged with constant 2/3
    std::vector<Scenario> scenarios{build("two_lines_pi3"), build("two_lines_pi2"), build("epigraph")};
    for (int i = 0; i < 20; ++i) scenarios.push_back(corpus_pair(i, seed));
    std::size_t certified = 0, failures = 0;
    Json rows = Json::array();
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        const auto& s = scenarios[i];
        const auto op = OperatorSpec::ap(s.A, s.B);
        const SampleDomain dom{s.seed_region, s.lambda, s.A, std::nullopt, 4000, seed + 31 * i};
        const auto kappa = estimate_kappa(op, s.intersection, dom);
        const auto eps = estimate_violation(op, s.base_point, alpha, dom);
        Json row{{"scenario", s.name}, {"kappa", real_json(kappa.value)}, {"eps", real_json(eps.value)}};
        std::optional<double> predicted;
        if (std::isfinite(kappa.value) && kappa.value > 0.0) {
            try {
                predicted = predicted_rate_msr(eps.value, alpha, kappa.value);
            } catch (const DomainError&) {
            }
        }
        if (!predicted) {
            row["certified"] = false;
            rows.push_back(std::move(row));
            continue;
        }
        ++certified;
        double measured = 0.0;
        SampleDomain seeds = dom;
        seeds.samples = 8;
        seeds.seed = seed + 31 * i + 17;
        for (const auto& x0 : draw(seeds)) {
            const auto t = ap_trace(s, x0, 20000);
            if (t.x.size() >= 2) measured = std::max(measured, check_linear_monotone(t, s.intersection).linear_c);
        }
        const bool ok = measured <= *predicted + 1e-9;
        if (!ok) ++failures;
        row["certified"] = true;
        row["predicted"] = *predicted;
        row["measured"] = measured;
        row["pass"] = ok;
        rows.push_back(std::move(row));
    }
    return result(12, "measured monotonicity constant <= predicted msr rate", failures == 0 && certified > 0,
                  std::to_string(certified) + " certified scenarios, " + std::to_string(failures) + " violations",
                  {{"scenarios", rows}});
}

// 13 --------------------------------------------------------------------------
CriterionResult determinism(std::uint64_t seed) {
    std::vector<int> differing;
    for (int id = 1; id < kCriterionCount; ++id) {
        const auto a = run_criterion(id, seed).report.dump();
        const auto b = run_criterion(id, seed).report.dump();
        if (a != b) differing.push_back(id);
    }
    std::vector<std::string> differing_runs;
    for (const char* name : {"two_lines_pi3", "sawtooth", "monotone_not_fejer", "geometric_n2", "epigraph"}) {
        RunConfig cfg;
        cfg.scenario = name;
        cfg.seed = seed;
        const auto a = run_scenario(cfg), b = run_scenario(cfg);
        if (a.trace_csv != b.trace_csv || a.trace_json != b.trace_json || a.report_json != b.report_json ||
            a.plot_svg != b.plot_svg)
            differing_runs.push_back(name);
    }
    const bool ok = differing.empty() && differing_runs.empty();
    return result(13, "same seed gives byte-identical reports and run outputs", ok,
                  ok ? "criteria 1-12 and 5 scenario runs reproduced byte for byte" : "outputs differ",
                  {{"differing_criteria", differing}, {"differing_runs", differing_runs}});
}

} // namespace

Scenario corpus_pair(int i, std::uint64_t seed) {
    const auto family = static_cast<ConvexFamily>(i % 3);
    const int dim = 2 + (i / 3) % 7;
    return random_convex_pair(seed * 100003 + static_cast<std::uint64_t>(i), dim, family);
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
    switch (id) {
    case 1: return sr_bracket_on_lines(seed);
    case 2: return rates_on_lines(seed);
    case 3: return monotone_not_fejer(seed);
    case 4: return geometric_iterations(seed);
    case 5: return sawtooth_stuck(seed);
    case 6: return convex_dichotomy(seed);
    case 7: return projection_lemmas(seed);
    case 8: return convex_loop(seed);
    case 9: return q_implies_extendible(seed);
    case 10: return extendible_implies_r(seed);
    case 11: return epigraph_local_global(seed);
    case 12: return rate_ordering(seed);
    case 13: return determinism(seed);
    }
    throw DomainError("no criterion " + std::to_string(id));
}

std::vector<int> suite_criteria(const std::string& suite) {
    if (suite == "paper_examples") return {1, 2, 3, 4, 5, 11};
    if (suite == "convex_properties") return {6, 7, 9, 10};
    if (suite == "necessity_bounds") return {8, 12};
    if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
    throw DomainError("unknown suite \"" + suite + "\"");
}

std::vector<CriterionResult> run_suite(const std::string& suite, std::uint64_t seed) {
    std::vector<CriterionResult> out;
    for (int id : suite_criteria(suite)) out.push_back(run_criterion(id, seed));
    return out;
}

} // namespace fixpoint
