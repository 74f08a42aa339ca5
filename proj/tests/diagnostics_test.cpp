#include "fixpoint/diagnostics.hpp"
#include "fixpoint/sampling.hpp"
#include "fixpoint/scenarios.hpp"
#include "fixpoint/verify.hpp"

#include <doctest.h>

#include <cmath>

using namespace fixpoint;

namespace {

Trace from_errors(const std::vector<double>& e) {
    Points xs;
    for (double v : e) xs.push_back(make_vector({v, 0.0}));
    return trace_from_sequence(std::move(xs));
}

Trace ap_run(const Scenario& s, const Vector& x0, double tol = 1e-12) {
    IterationConfig c;
    c.start = x0;
    c.residual_tol = tol;
    c.lambda = s.lambda;
    c.target = s.intersection;
    return run(OperatorSpec::ap(s.A, s.B), c);
}

} // namespace

TEST_CASE("linearly monotone but not Fejer") {
    const auto s = build("monotone_not_fejer");
    const auto t = trace_from_sequence(*s.sequence, s.intersection);
    const auto mono = check_linear_monotone(t, s.intersection);
    CHECK(mono.linear_c == 0.5);
    CHECK(mono.monotone);
    CHECK(mono.exact_omega);
    const auto f = check_fejer(t, {make_vector({2.0, 0.0})});
    CHECK(!f.fejer);
    REQUIRE(f.witness);
    CHECK(*f.witness == make_vector({2.0, 0.0}));
    CHECK(f.index == std::optional<std::size_t>(0));
    // with respect to the origin the same sequence is Fejer
    CHECK(check_fejer(t, {make_vector({0.0, 0.0})}).fejer);
    CHECK_THROWS_AS(check_fejer(t, {}), DomainError);

    const auto probed = check_linear_monotone(t, Target::probe({make_vector({0.0, 0.0})}));
    CHECK(!probed.exact_omega);
    CHECK(probed.probe_size == 1);
}

TEST_CASE("Q and R rates of explicit sequences") {
    std::vector<double> geo;
    for (int k = 0; k < 30; ++k) geo.push_back(std::pow(0.5, k));
    const auto q = estimate_q_rate(from_errors(geo), make_vector({0.0, 0.0}));
    CHECK(q.c == doctest::Approx(0.5).epsilon(1e-12));
    const auto r = estimate_r_rate(from_errors(geo), make_vector({0.0, 0.0}));
    CHECK(r.c == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(!r_certificate_failure(geo, r.c, r.gamma));

    // R-linear but not Q-linear: every other step stalls
    std::vector<double> osc;
    for (int k = 0; k < 40; ++k) osc.push_back(std::pow(0.25, k / 2));
    const auto qo = estimate_q_rate(from_errors(osc), make_vector({0.0, 0.0}));
    CHECK(qo.c == doctest::Approx(1.0));
    const auto ro = estimate_r_rate(from_errors(osc), make_vector({0.0, 0.0}));
    CHECK(ro.c == doctest::Approx(0.5).epsilon(2e-2)); // the hull fit sees the stalled first step
    CHECK(!r_certificate_failure(osc, ro.c, ro.gamma));

    CHECK_THROWS_AS(estimate_q_rate(from_errors({1.0}), make_vector({0.0, 0.0})), DomainError);
    CHECK_THROWS_AS(estimate_r_rate(from_errors({1.0, 0.5}), make_vector({0.0, 0.0})), DomainError);
}

TEST_CASE("R-certificate failures and the extension formula") {
    const std::vector<double> e{1.0, 0.9, 0.2, 0.1, 0.05, 0.025};
    CHECK(r_certificate_failure(e, 0.5, 1.0) == std::optional<std::size_t>(1));
    CHECK(!r_certificate_failure(e, 0.5, 3.2));
    // eventual bound from p = 2 with gamma' = 0.2: gamma = max{gamma'/c^p, e_k/c^k, k <= p}
    const double g = extend_r_certificate(e, 2, 0.2, 0.5);
    CHECK(g == doctest::Approx(std::max({0.2 / 0.25, 1.0, 0.9 / 0.5, 0.2 / 0.25})));
    CHECK(!r_certificate_failure(e, 0.5, g));
}

TEST_CASE("Q-linear implies R-linear with the same rate on convex traces") {
    for (int i = 0; i < 40; ++i) {
        const auto s = corpus_pair(i, 5);
        for (const auto& x0 : sample_on_set(s.A, s.seed_region, s.lambda, 2, 300 + i)) {
            const auto t = ap_run(s, x0, 1e-15);
            const Vector lim = t.x.back();
            RateEstimate q;
            try {
                q = estimate_q_rate(t.x, lim, 1e-6 * std::max(1.0, lim.norm()));
            } catch (const DomainError&) {
                continue;
            }
            std::vector<double> e = errors_to(t.x, lim);
            e.resize(q.window_end);
            CHECK(!r_certificate_failure(e, q.c, e.front()));
        }
    }
}

TEST_CASE("R-linear and linear monotonicity agree on convex traces") {
    for (int i = 0; i < 40; ++i) {
        const auto s = corpus_pair(i, 6);
        for (const auto& x0 : sample_on_set(s.A, s.seed_region, s.lambda, 2, 500 + i)) {
            const auto t = ap_run(s, x0);
            if (t.x.size() < 4 || t.stop_reason != StopReason::FixedPoint) continue;
            const auto mono = check_linear_monotone(t, s.intersection);
            const auto r = estimate_r_rate(t, t.x.back());
            CHECK(mono.linear_c < 1.0);
            CHECK(r.c < 1.0);
        }
    }
}

TEST_CASE("linear extendibility of the geometric n = 2 joining sequence") {
    const auto s = geometric(2);
    const auto t = ap_run(s, *s.start);
    const auto ext = check_linear_extendible(t.z, 2);
    CHECK(ext.holds);
    CHECK(ext.c == doctest::Approx(1.0 / 9.0));
    CHECK(ext.d0 == doctest::Approx(2.0 / 3.0));
    CHECK(ext.gamma == doctest::Approx(1.5));
    const auto e = errors_to(t.x, t.x.back());
    CHECK(!r_certificate_failure(e, ext.c, ext.gamma));
}

TEST_CASE("linear extendibility on two lines: frequency 2 at the Q-rate") {
    const auto s = build("two_lines_pi3");
    const auto t = ap_run(s, *s.start);
    const auto ext = check_linear_extendible(t.z, 2);
    CHECK(ext.holds);
    CHECK(ext.c == doctest::Approx(0.25).epsilon(1e-9));
    // consecutive joining steps shrink by sqrt(c)
    for (std::size_t k = 0; k + 2 < t.z.size(); ++k) {
        const double a = (t.z[k + 2] - t.z[k + 1]).norm(), b = (t.z[k + 1] - t.z[k]).norm();
        CHECK(a <= 0.5 * b + 1e-9);
    }
    // increasing steps violate the first condition
    const auto bad = check_linear_extendible({make_vector({0.0}), make_vector({1.0}), make_vector({3.0}),
                                              make_vector({3.5})},
                                             1);
    CHECK(!bad.holds);
    CHECK(bad.failing_index);
}

TEST_CASE("monotone subsequence extraction and strides") {
    const auto s = build("two_lines_pi3");
    const auto t = ap_run(s, *s.start);
    const Vector lim = make_vector({0.0, 0.0});
    const auto r = estimate_r_rate(t, lim);
    const double c = 0.5;
    const double gamma = std::max(r.gamma, 1.0);
    const auto sub = extract_monotone_subsequence(t, s.intersection, c, gamma, lim);
    REQUIRE(sub.indices.size() >= 2);
    for (std::size_t i = 1; i < sub.indices.size(); ++i) {
        const double prev = distance(s.intersection, t.x[sub.indices[i - 1]]);
        CHECK(distance(s.intersection, t.x[sub.indices[i]]) <= c * prev + 1e-12);
    }
    CHECK_THROWS_AS(extract_monotone_subsequence(t, s.intersection, 0.1, 1.0, lim), DomainError);

    const auto strides = monotone_strides(t, s.intersection, 2, 0.0625 + 1e-9);
    CHECK(strides == std::vector<std::size_t>{0, 1});
    CHECK(monotone_strides(t, s.intersection, 1, 0.2).empty());
}

TEST_CASE("convex dichotomy") {
    const auto lines = build("two_lines_pi3");
    const auto d = check_convex_dichotomy(ap_run(lines, *lines.start));
    CHECK(d.kind == Dichotomy::NeverReaches);
    CHECK(d.bound_holds);
    CHECK(d.c == doctest::Approx(0.25));

    const auto perp = build("two_lines_pi2");
    CHECK(check_convex_dichotomy(ap_run(perp, *perp.start)).kind == Dichotomy::SolvedInOne);
    CHECK(check_convex_dichotomy(ap_run(perp, make_vector({0.0, 0.0}))).kind == Dichotomy::StartsSolved);
    CHECK(to_string(Dichotomy::SolvedInOne) == "solved_in_one");
}

TEST_CASE("trace_limit requires a converged trace") {
    const auto s = build("two_lines_pi3");
    IterationConfig c;
    c.start = *s.start;
    c.max_iter = 3;
    const auto t = run(OperatorSpec::ap(s.A, s.B), c);
    CHECK_THROWS_AS(trace_limit(t), DomainError);
    CHECK_THROWS_AS(estimate_q_rate(t), DomainError);
    CHECK(estimate_q_rate(t, make_vector({0.0, 0.0})).c == doctest::Approx(0.25));
}
