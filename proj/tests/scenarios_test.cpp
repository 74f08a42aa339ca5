#include "fixpoint/cli.hpp"
#include "fixpoint/scenarios.hpp"

#include <doctest.h>

#include <cmath>

using namespace fixpoint;

TEST_CASE("every built-in scenario re-derives its expected values") {
    for (const auto& name : builtin_names()) {
        CAPTURE(name);
        RunConfig cfg;
        cfg.scenario = name;
        cfg.samples = 20000;
        const auto out = run_scenario(cfg);
        CHECK(out.mismatches.empty());
        const auto report = Json::parse(out.report_json);
        CHECK(report["status"] == "ok");
        CHECK(!report["checks"].empty());
    }
}

TEST_CASE("scenario contents") {
    const auto lines = build("two_lines_pi3");
    CHECK(lines.expected_value("sr_prime") == doctest::Approx(2.0 / std::sqrt(3.0)));
    CHECK(lines.find("sr_prime")->provenance == Provenance::Paper);
    CHECK(lines.find("q_rate")->tolerance == 1e-6);
    CHECK_THROWS(lines.expected_value("no_such_key"));

    const auto mnf = build("monotone_not_fejer");
    REQUIRE(mnf.sequence);
    CHECK(mnf.sequence->size() == 41);
    CHECK((*mnf.sequence)[3] == make_vector({0.125, 0.125}));

    const auto g = geometric(3);
    // z_k = 3^-k (1,0); A holds the even indices, B the odd ones, z_2n is the solution
    CHECK(distance(g.A, make_vector({1.0 / 81.0, 0.0})) == 0.0);
    CHECK(distance(g.B, make_vector({1.0 / 27.0, 0.0})) == 0.0);
    CHECK(distance(g.intersection, make_vector({std::pow(3.0, -6), 0.0})) == 0.0);
    CHECK(g.expected_value("iterations_to_solve") == 3.0);

    const auto saw = build("sawtooth");
    const auto& stuck = std::get<Points>(saw.find("stuck_points")->value);
    CHECK(stuck.size() == 21);
    for (const auto& p : stuck) CHECK(distance(saw.A, p) == 0.0);

    CHECK_THROWS_AS(build("nope"), DomainError);
    CHECK_THROWS_AS(geometric(0), DomainError);
}

TEST_CASE("random convex pairs are deterministic and consistent") {
    for (auto family : {ConvexFamily::HalfspaceBall, ConvexFamily::BoxAffine, ConvexFamily::BallBall}) {
        for (int dim = 2; dim <= 8; dim += 3) {
            const auto a = random_convex_pair(42, dim, family);
            const auto b = random_convex_pair(42, dim, family);
            CHECK(scenario_json(a).dump() == scenario_json(b).dump());
            CHECK(a.A.dim() == dim);
            CHECK(distance(a.A, a.base_point) <= 1e-9);
            CHECK(distance(a.B, a.base_point) <= 1e-9);
            CHECK(a.name == std::string(to_string(family)) + "_d" + std::to_string(dim) + "_s42");
            CHECK(convex_family_from_string(to_string(family)) == family);
        }
    }
    CHECK(scenario_json(random_convex_pair(1, 3, ConvexFamily::BallBall)).dump() !=
          scenario_json(random_convex_pair(2, 3, ConvexFamily::BallBall)).dump());
    CHECK_THROWS_AS(random_convex_pair(1, 1, ConvexFamily::BallBall), DomainError);
    CHECK_THROWS_AS(random_convex_pair(1, 9, ConvexFamily::BallBall), DomainError);
}

TEST_CASE("scenario JSON round trip") {
    for (const auto& name : builtin_names()) {
        CAPTURE(name);
        const Json j = scenario_json(build(name));
        CHECK(scenario_json(scenario_from_json(j)).dump() == j.dump());
    }
    const Json rnd = scenario_json(random_convex_pair(3, 4, ConvexFamily::BoxAffine));
    CHECK(scenario_json(scenario_from_json(rnd)).dump() == rnd.dump());

    Json bad = scenario_json(build("two_lines_pi3"));
    bad["colour"] = "blue";
    CHECK_THROWS_AS(scenario_from_json(bad), SchemaError);
    Json missing = scenario_json(build("two_lines_pi3"));
    missing.erase("A");
    CHECK_THROWS_AS(scenario_from_json(missing), SchemaError);
}
