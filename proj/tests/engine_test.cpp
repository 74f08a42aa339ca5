#include "fixpoint/engine.hpp"
#include "fixpoint/sampling.hpp"
#include "fixpoint/scenarios.hpp"
#include "fixpoint/serialize.hpp"
#include "fixpoint/verify.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace fixpoint;

namespace {

SetSpec line(double theta) {
    return SetSpec::affine(make_vector({0.0, 0.0}), {make_vector({std::cos(theta), std::sin(theta)})});
}

IterationConfig config(Vector start, int max_iter = 100000) {
    IterationConfig c;
    c.start = std::move(start);
    c.max_iter = max_iter;
    return c;
}

} // namespace

TEST_CASE("alternating projections on two lines follow the closed form") {
    const double theta = M_PI / 3;
    const auto t = run(OperatorSpec::ap(line(0.0), line(theta)), config(make_vector({1.0, 0.0})));
    REQUIRE(t.stop_reason == StopReason::FixedPoint);
    const double c = std::cos(theta) * std::cos(theta);
    for (std::size_t k = 0; k < t.x.size(); ++k) {
        CHECK(std::abs(t.x[k][0] - std::pow(c, static_cast<double>(k))) <= 1e-15);
        CHECK(t.x[k][1] == 0.0);
        CHECK((t.b[k] - oracle::project_line(theta, t.x[k])).norm() <= 1e-15);
    }
    // joining sequence interleaves x_k and b_k
    REQUIRE(t.z.size() == 2 * t.x.size());
    for (std::size_t k = 0; k < t.x.size(); ++k) {
        CHECK(t.z[2 * k] == t.x[k]);
        CHECK(t.z[2 * k + 1] == t.b[k]);
    }
    CHECK(t.residual.back() <= 1e-12);
}

TEST_CASE("Douglas-Rachford matches the reflector composition") {
    const double ta = 0.2, tb = 1.1;
    const auto op = OperatorSpec::dr(line(ta), line(tb));
    for (const auto& x : sample_region({make_vector({0.0, 0.0}), 2.0}, Lambda::whole(), 200, 4)) {
        CHECK((apply(op, x) - oracle::dr_lines(ta, tb, x)).norm() <= 1e-14);
    }
}

TEST_CASE("relaxation and composition") {
    const auto a = line(0.0), b = line(0.7);
    const auto ap = OperatorSpec::ap(a, b);
    const auto relaxed = OperatorSpec::relax(ap, 0.25);
    const Vector x = make_vector({0.3, 1.2});
    CHECK((apply(relaxed, x) - (0.75 * x + 0.25 * apply(ap, x))).norm() <= 1e-15);

    // compose([P_A-as-AP(A,A), P_B-as-AP(B,B)]) applies the last operator first
    const auto pa = OperatorSpec::ap(a, a), pb = OperatorSpec::ap(b, b);
    const auto comp = OperatorSpec::compose({pa, pb});
    CHECK((apply(comp, x) - apply(ap, x)).norm() <= 1e-15);
    CHECK_THROWS_AS(OperatorSpec::relax(ap, 1.0), InvariantError);
    CHECK_THROWS_AS(OperatorSpec::compose({}), InvariantError);
    CHECK_THROWS_AS(OperatorSpec::ap(a, SetSpec::whole(3)), DimensionError);
}

TEST_CASE("the seed is pre-projected onto Lambda and A") {
    const auto a = SetSpec::halfspace(make_vector({0.0, 1.0}), 0.0);
    const auto b = SetSpec::ball(make_vector({0.0, 2.0}), 1.0);
    const auto t = run(OperatorSpec::ap(a, b), config(make_vector({0.0, 5.0})));
    CHECK(t.seed == make_vector({0.0, 5.0}));
    CHECK(t.x.front() == make_vector({0.0, 0.0}));
    // disjoint sets: AP stops at once on the gap pair
    CHECK(t.stop_reason == StopReason::FixedPoint);
    CHECK(t.dist_B.front() == 1.0);
}

TEST_CASE("stop reasons and iteration cap") {
    const auto op = OperatorSpec::ap(line(0.0), line(0.05));
    const auto t = run(op, config(make_vector({1.0, 0.0}), 5));
    CHECK(t.stop_reason == StopReason::MaxIter);
    CHECK(t.x.size() == 6);
    CHECK_THROWS_AS(run(op, config(make_vector({1.0, 0.0}), 0)), InvariantError);
    const auto solved = run(op, config(make_vector({0.0, 0.0})));
    CHECK(solved.stop_reason == StopReason::FixedPoint);
    CHECK(solved.x.size() == 1);
    CHECK(to_string(StopReason::FixedPoint) == "fixed_point");
    CHECK(to_string(StopReason::MaxIter) == "max_iter");
}

TEST_CASE("residual_map minimizes over the projector's tie set") {
    // B = {(-1,1), (1,1)}: from the origin both are nearest; A = x-axis
    const auto a = line(0.0);
    const auto b = SetSpec::points({make_vector({-1.0, 1.0}), make_vector({1.0, 1.0})});
    const auto op = OperatorSpec::ap(a, b);
    const Vector x = make_vector({0.0, 0.0});
    const Points all = apply_all(op, x);
    REQUIRE(all.size() == 2);
    CHECK(all[0] == make_vector({-1.0, 0.0}));
    CHECK(apply(op, x) == make_vector({-1.0, 0.0}));
    CHECK(residual_map(op, x) == 1.0);
    CHECK(residual_map(op, make_vector({0.9, 0.0})) == doctest::Approx(0.1));
}

TEST_CASE("geometric finite sets take exactly n iterations") {
    for (int n = 1; n <= 4; ++n) {
        const auto s = geometric(n);
        IterationConfig c = config(*s.start);
        c.target = s.intersection;
        const auto t = run(OperatorSpec::ap(s.A, s.B), c);
        CHECK(t.x.size() == static_cast<std::size_t>(n) + 1);
        CHECK(t.dist_target[static_cast<std::size_t>(n)] == 0.0);
        if (n > 0) CHECK(t.dist_target[static_cast<std::size_t>(n) - 1] > 0.0);
    }
}

TEST_CASE("approximate_fix_set finds the sawtooth stuck points") {
    const auto s = build("sawtooth");
    const auto fix = approximate_fix_set(OperatorSpec::ap(s.A, s.B), s.seed_region, 200, s.lambda);
    CHECK(!fix.warning);
    CHECK(fix.starts == 200);
    auto has = [&](const Vector& p) {
        return std::any_of(fix.points.begin(), fix.points.end(), [&](const Vector& q) { return (q - p).norm() <= 1e-9; });
    };
    CHECK(has(make_vector({0.0, 0.0})));
    for (int n = 1; n <= 6; ++n) CHECK(has(make_vector({std::ldexp(1.0, -n), 0.0})));
    for (std::size_t i = 1; i < fix.points.size(); ++i) CHECK(lex_less(fix.points[i - 1], fix.points[i]));
}

TEST_CASE("convex traces are Fejer monotone and satisfy the step-ratio lemma") {
    for (int i = 0; i < 30; ++i) {
        const auto s = corpus_pair(i, 3);
        const Points starts = sample_on_set(s.A, s.seed_region, s.lambda, 3, 40 + i);
        const Points probe = sample_on_set(s.B, s.seed_region, s.lambda, 200, 90 + i);
        Points omega;
        for (const auto& p : probe)
            if (distance(s.intersection, p) <= 1e-12) omega.push_back(p);
        omega.push_back(nearest(s.intersection, s.base_point));
        for (const auto& x0 : starts) {
            IterationConfig c = config(x0, 5000);
            const auto t = run(OperatorSpec::ap(s.A, s.B), c);
            for (const auto& w : omega)
                for (std::size_t k = 0; k + 1 < t.x.size(); ++k)
                    CHECK((t.x[k + 1] - w).norm() <= (t.x[k] - w).norm() + 1e-9);
            // ‖z_{k+2}−z_{k+1}‖/‖z_{k+1}−z_k‖ nondecreasing
            double prev = 0.0;
            for (std::size_t k = 0; k + 2 < t.z.size(); ++k) {
                const double den = (t.z[k + 1] - t.z[k]).norm();
                if (den < 1e-12) break;
                const double r = (t.z[k + 2] - t.z[k + 1]).norm() / den;
                // steps carry rounding error of about eps |x|, which the ratio magnifies by 1/den
                const double scale = std::max(1.0, t.z[k].norm());
                CHECK(r >= prev - 1e-9 - 1e-15 * scale / den);
                prev = r;
            }
        }
    }
}

TEST_CASE("runs are bit-identical and the CSV has the documented columns") {
    const auto s = build("two_lines_pi3");
    IterationConfig c = config(*s.start);
    c.target = s.intersection;
    const auto t1 = run(OperatorSpec::ap(s.A, s.B), c);
    const auto t2 = run(OperatorSpec::ap(s.A, s.B), c);
    CHECK(trace_csv(t1) == trace_csv(t2));
    CHECK(trace_json(t1).dump() == trace_json(t2).dump());
    const std::string csv = trace_csv(t1);
    CHECK(csv.substr(0, csv.find('\n')) == "k,x_0,x_1,b_0,b_1,dist_A,dist_B,dist_target,step_norm,residual");
    std::istringstream in(csv);
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    std::vector<std::string> cells;
    std::istringstream row(first);
    for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
    REQUIRE(cells.size() == 10);
    CHECK(cells[0] == "0");
    CHECK(std::stod(cells[3]) == doctest::Approx(0.25));
    CHECK(std::stod(cells[6]) == doctest::Approx(std::sqrt(3.0) / 2));
    CHECK(cells[8] == "nan");
    CHECK(std::stod(cells[9]) == doctest::Approx(0.75));
    // shortest round-trip formatting
    for (const auto& cell : cells)
        if (cell != "nan") CHECK(format_double(std::stod(cell)) == cell);
}
