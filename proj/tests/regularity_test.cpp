#include "fixpoint/regularity.hpp"
#include "fixpoint/scenarios.hpp"
#include "fixpoint/verify.hpp"

#include <doctest.h>

#include <cmath>

using namespace fixpoint;

namespace {

SetSpec line(double theta) {
    return SetSpec::affine(make_vector({0.0, 0.0}), {make_vector({std::cos(theta), std::sin(theta)})});
}

const Vector origin = make_vector({0.0, 0.0});

} // namespace

TEST_CASE("two lines: sr' = 1/sin(theta) and kappa = 1/sin^2(theta)") {
    for (double theta : {M_PI / 6, M_PI / 4, M_PI / 3, M_PI / 2}) {
        CAPTURE(theta);
        const auto a = line(0.0), b = line(theta);
        const auto c = Target::exact(SetSpec::points({origin}));
        const auto srp = estimate_sr_prime(a, b, c, origin, 1.0, Lambda::whole(), 2000, 1);
        CHECK(srp.value == doctest::Approx(1.0 / std::sin(theta)).epsilon(1e-12));
        const SampleDomain dom{{origin, 1.0}, Lambda::whole(), a, std::nullopt, 2000, 1};
        const auto k = estimate_kappa(OperatorSpec::ap(a, b), c, dom);
        CHECK(k.value == doctest::Approx(1.0 / std::pow(std::sin(theta), 2)).epsilon(1e-12));
        CHECK(k.kind == ConstantKind::KappaMsr);
        CHECK(k.certificate.count == 2000);
    }
}

TEST_CASE("sawtooth sr' is sqrt(10), attained at the tooth tops") {
    const auto s = build("sawtooth");
    // at (2^-n, 0): |x| = 2^-n and the distance to the segment of slope 1/3 is 2^-n/sqrt(10)
    for (int n = 0; n < 8; ++n) {
        const Vector top = make_vector({std::ldexp(1.0, -n), 0.0});
        CHECK(distance(s.intersection, top) / distance(s.B, top) == doctest::Approx(std::sqrt(10.0)));
    }
    const auto e = estimate_sr_prime(s.A, s.B, s.intersection, origin, 0.6, s.lambda, 20000, 0);
    CHECK(e.value == doctest::Approx(std::sqrt(10.0)).epsilon(1e-3));
    CHECK(e.value <= std::sqrt(10.0) + 1e-9);
}

TEST_CASE("sample doubling never decreases a supremum estimate") {
    const auto s = build("epigraph");
    const auto op = OperatorSpec::ap(s.A, s.B);
    for (std::size_t n : {500, 1000, 2000}) {
        const auto a = estimate_sr_prime(s.A, s.B, s.intersection, s.base_point, 0.5, s.lambda, n, 4);
        const auto b = estimate_sr_prime(s.A, s.B, s.intersection, s.base_point, 0.5, s.lambda, 2 * n, 4);
        CHECK(b.value >= a.value);
        const auto c = estimate_sr(s.A, s.B, s.intersection, s.base_point, 0.5, s.lambda, n, 4);
        const auto d = estimate_sr(s.A, s.B, s.intersection, s.base_point, 0.5, s.lambda, 2 * n, 4);
        CHECK(d.value >= c.value);
        SampleDomain dom{{s.base_point, 0.5}, s.lambda, s.A, std::nullopt, n, 4};
        const double k1 = estimate_kappa(op, s.intersection, dom).value;
        dom.samples = 2 * n;
        CHECK(estimate_kappa(op, s.intersection, dom).value >= k1);
    }
}

TEST_CASE("bracket sr' <= sr <= 1 + 2 sr' on lines and random convex pairs") {
    const auto s = build("two_lines_pi3");
    const auto srp = estimate_sr_prime(s.A, s.B, s.intersection, origin, 1.0, s.lambda, 5000, 2);
    const auto sr = estimate_sr(s.A, s.B, s.intersection, origin, 1.0, s.lambda, 5000, 2);
    CHECK(verify_bracket(sr, srp));
    for (int i = 0; i < 15; ++i) {
        const auto p = corpus_pair(i, 8);
        const auto a = estimate_sr_prime(p.A, p.B, p.intersection, p.base_point, 0.5, p.lambda, 1500, 3);
        const auto b = estimate_sr(p.A, p.B, p.intersection, p.base_point, 0.5, p.lambda, 1500, 3);
        if (std::isfinite(a.value) && std::isfinite(b.value)) CHECK(b.value <= 1.0 + 2.0 * a.value + 1e-2);
    }
    const auto other = estimate_sr_prime(s.A, s.B, s.intersection, origin, 0.5, s.lambda, 5000, 2);
    CHECK_THROWS_AS(verify_bracket(sr, other), InvariantError);
}

TEST_CASE("ratio conventions: 0/0 is 0, positive over zero is infinite") {
    // A = B: every sample of A has zero distance to both
    const auto a = line(0.0);
    const auto same = estimate_sr_prime(a, a, Target::exact(a), origin, 1.0, Lambda::whole(), 200, 0);
    CHECK(same.value == 0.0);
    CHECK(same.degenerate);

    // kappa against a wrong fixed set: residual 0 but positive distance
    const auto op = OperatorSpec::ap(a, a);
    const SampleDomain dom{{origin, 1.0}, Lambda::whole(), a, std::nullopt, 200, 0};
    const auto k = estimate_kappa(op, Target::exact(SetSpec::points({make_vector({5.0, 5.0})})), dom);
    CHECK(std::isinf(k.value));
}

TEST_CASE("averaged-operator constants on convex sets") {
    const auto a = line(0.0), b = line(0.9);
    const auto op = OperatorSpec::ap(a, b);
    const SampleDomain dom{{origin, 1.0}, Lambda::whole(), std::nullopt, std::nullopt, 3000, 7};
    const auto viol = estimate_violation(op, origin, 2.0 / 3.0, dom);
    CHECK(viol.value <= 1e-9);
    const auto avg = estimate_averaging(op, origin, dom);
    CHECK(avg.value <= 2.0 / 3.0 + 1e-9);
    CHECK(avg.value > 0.5);
    // a smaller alpha than the operator's averaging constant shows a violation
    CHECK(estimate_violation(op, origin, 0.3, dom).value > 0.0);
}

TEST_CASE("sigma and elemental estimates") {
    const auto a = line(0.0), b = line(M_PI / 2);
    const auto sig = estimate_sigma(a, b, origin, 1.0, 2000, 5);
    // perpendicular lines: P_A P_B x = 0, so the residual is |x| = sqrt(dA^2 + dB^2)
    CHECK(sig.value == doctest::Approx(1.0).epsilon(1e-12));

    const auto sp = SetSpec::sphere(origin, 1.0);
    const NormalPair pair{make_vector({1.0, 0.0}), make_vector({-0.5, 0.0})};
    const SampleDomain dom{{make_vector({1.0, 0.0}), 0.3}, Lambda::whole(), std::nullopt, std::nullopt, 2000, 5};
    const auto el = estimate_elemental(sp, pair, dom);
    CHECK(el.value > 0.0);
    CHECK(el.kind == ConstantKind::ElementalEps);
    const auto flat = estimate_elemental(a, NormalPair{origin, make_vector({0.0, 1.0})}, dom);
    CHECK(flat.value <= 1e-12);
}

TEST_CASE("rate formulas") {
    // sqrt(1 + eps - (1-alpha)/(kappa^2 alpha))
    CHECK(*predicted_rate_msr(0.0, 2.0 / 3.0, 4.0 / 3.0) == doctest::Approx(std::sqrt(1.0 - 0.5 / (16.0 / 9.0))));
    CHECK(!predicted_rate_msr(0.1, 0.5, 100.0));
    CHECK_THROWS_AS(predicted_rate_msr(0.0, 0.5, 0.5), DomainError);
    CHECK_THROWS_AS(predicted_rate_msr(0.0, 1.0, 2.0), DomainError);
    CHECK_THROWS_AS(predicted_rate_msr(-0.1, 0.5, 2.0), DomainError);

    CHECK(eps_tilde(0.0) == 0.0);
    CHECK(eps_tilde(0.5) == doctest::Approx(12.0));

    const auto cp = predicted_rate_cp(0.0, 0.0, 2.0, 1.0);
    REQUIRE(cp.c);
    CHECK(*cp.c == doctest::Approx(std::sqrt(1.0 - 1.0 / 8.0)));
    CHECK(!cp.collapsed);
    const auto collapsed = predicted_rate_cp(0.0, 0.0, 0.5, 1.0);
    CHECK(collapsed.collapsed);
    CHECK(collapsed.c == std::optional<double>(0.0));
    CHECK(collapsed.radicand < 0.0);
    CHECK(!predicted_rate_cp(0.2, 0.2, 5.0, 5.0).c);

    CHECK(necessity_bound(NecessityKind::Msr, 0.25) == doctest::Approx(4.0 / 3.0));
    CHECK(necessity_bound(NecessityKind::Nec1Plus, 0.5, 2) == doctest::Approx(2.0 * (8.0 - 1.0 - 0.5) / 0.5));
    CHECK(necessity_bound(NecessityKind::Nec2, 0.5, 3) == doctest::Approx(12.0));
    CHECK(necessity_bound(NecessityKind::Nec1PlusPart2, 0.5, 2) == doctest::Approx(2.0 * (3.0 - 0.5) / 0.5));
    CHECK(to_string(ConstantKind::SrPrime) == "sr_prime");
}

TEST_CASE("necessity bound is tight on two lines") {
    const auto s = build("two_lines_pi3");
    const SampleDomain dom{{origin, 1.0}, s.lambda, s.A, std::nullopt, 5000, 0};
    const double kappa = estimate_kappa(OperatorSpec::ap(s.A, s.B), s.intersection, dom).value;
    CHECK(kappa == doctest::Approx(necessity_bound(NecessityKind::Msr, 0.25)).epsilon(1e-9));
}

TEST_CASE("global subtransversality: lines hold, the epigraph fails") {
    const auto lines = build("two_lines_pi3");
    const auto ok = check_global_subtransversality(lines.A, lines.B, lines.intersection, {origin, 10.0}, 0.2, 3000, 1);
    CHECK(ok.holds);
    CHECK(ok.max_ratio == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-9));
    const auto epi = build("epigraph");
    const auto bad = check_global_subtransversality(epi.A, epi.B, epi.intersection, {origin, 1.0}, 0.5, 3000, 1);
    CHECK(!bad.holds);
    CHECK(bad.witness);
    CHECK_THROWS_AS(check_global_subtransversality(epi.A, epi.B, epi.intersection, {origin, 1.0}, 1.0), DomainError);
}
