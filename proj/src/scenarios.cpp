#include "fixpoint/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace fixpoint {

std::string_view to_string(Provenance p) {
    switch (p) {
    case Provenance::Paper: return "paper";
    case Provenance::Trivial: return "trivial";
    case Provenance::Derived: return "derived";
    }
    return "";
}

namespace {

Provenance provenance_from_string(const std::string& s) {
    if (s == "paper") return Provenance::Paper;
    if (s == "trivial") return Provenance::Trivial;
    if (s == "derived") return Provenance::Derived;
    throw SchemaError("expected value: unknown provenance \"" + s + "\"");
}

Expected scalar(double v, double tol, Provenance p) { return {v, tol, p}; }

SetSpec line_through_origin(double angle) {
    return SetSpec::affine(make_vector({0.0, 0.0}), {make_vector({std::cos(angle), std::sin(angle)})});
}

Scenario two_lines(const std::string& name, double theta) {
    const Vector origin = make_vector({0.0, 0.0});
    Scenario s{
        .name = name,
        .A = line_through_origin(0.0),
        .B = line_through_origin(theta),
        .lambda = Lambda::whole(),
        .base_point = origin,
        .intersection = Target::exact(SetSpec::points({origin})),
        .expected = {},
        .seed_region = {origin, 1.0},
        .start = make_vector({1.0, 0.0}),
        .sequence = std::nullopt,
    };
    return s;
}

Scenario two_lines_pi3() {
    Scenario s = two_lines("two_lines_pi3", std::numbers::pi / 3.0);
    s.expected["sr_prime"] = scalar(2.0 / std::sqrt(3.0), 1e-3, Provenance::Paper);
    s.expected["sr"] = scalar(2.0, 1e-2, Provenance::Paper);
    s.expected["q_rate"] = scalar(0.25, 1e-6, Provenance::Derived);
    s.expected["r_rate"] = scalar(0.25, 1e-3, Provenance::Derived);
    s.expected["linear_c"] = scalar(0.25, 1e-6, Provenance::Derived);
    s.expected["kappa"] = scalar(4.0 / 3.0, 1e-3, Provenance::Derived);
    s.expected["extendible_c"] = scalar(0.25, 1e-6, Provenance::Derived);
    return s;
}

Scenario two_lines_pi2() {
    // A is the y-axis so that the seed (0,1) already lies on A
    Scenario s = two_lines("two_lines_pi2", 0.0);
    s.A = line_through_origin(std::numbers::pi / 2.0);
    s.start = make_vector({0.0, 1.0});
    s.expected["sr_prime"] = scalar(1.0, 1e-6, Provenance::Trivial);
    s.expected["sr"] = scalar(std::sqrt(2.0), 1e-2, Provenance::Derived);
    s.expected["q_rate"] = scalar(0.0, 1e-12, Provenance::Trivial);
    s.expected["kappa"] = scalar(1.0, 1e-6, Provenance::Trivial);
    s.expected["iterations_to_solve"] = scalar(1.0, 0.0, Provenance::Trivial);
    return s;
}

Scenario monotone_not_fejer() {
    const auto omega = SetSpec::halfspace(make_vector({0.0, 1.0}), 0.0);
    Points seq;
    for (int k = 0; k <= 40; ++k) {
        const double v = std::ldexp(1.0, -k);
        seq.push_back(make_vector({v, v}));
    }
    Scenario s{
        .name = "monotone_not_fejer",
        .A = omega,
        .B = omega,
        .lambda = Lambda::whole(),
        .base_point = make_vector({0.0, 0.0}),
        .intersection = Target::exact(omega),
        .expected = {},
        .seed_region = {make_vector({0.0, 0.0}), 1.0},
        .start = std::nullopt,
        .sequence = std::move(seq),
    };
    s.expected["linear_c"] = scalar(0.5, 0.0, Provenance::Paper);
    s.expected["fejer"] = scalar(0.0, 0.0, Provenance::Paper);
    s.expected["fejer_witness"] = {Points{make_vector({2.0, 0.0})}, 0.0, Provenance::Paper};
    return s;
}

Scenario sawtooth() {
    const Vector origin = make_vector({0.0, 0.0});
    Points stuck;
    for (int n = 0; n <= 20; ++n) stuck.push_back(make_vector({std::ldexp(1.0, -n), 0.0}));
    Scenario s{
        .name = "sawtooth",
        .A = sawtooth_graph(20),
        .B = SetSpec::curve({Segment{origin, make_vector({1.0, 1.0 / 3.0})}}),
        .lambda = Lambda::whole(),
        .base_point = origin,
        .intersection = Target::exact(SetSpec::points({origin})),
        .expected = {},
        .seed_region = {origin, 0.6},
        .start = make_vector({0.09, 0.03}),
        .sequence = std::nullopt,
    };
    s.expected["stuck_points"] = {std::move(stuck), 1e-9, Provenance::Paper};
    s.expected["sr_prime"] = scalar(std::sqrt(10.0), 1e-2, Provenance::Derived);
    return s;
}

Scenario epigraph() {
    // f(t) = -t-1 (t < -1), 0 on [-1, 0), t^2 (t >= 0)
    auto A = SetSpec::epigraph({-1.0, 0.0}, {{0.0, -1.0, -1.0}, {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}}, true);
    auto B = SetSpec::halfspace(make_vector({0.0, 1.0}), 0.0);
    const Vector base = make_vector({-1.0, 0.0});
    Scenario s{
        .name = "epigraph",
        .A = std::move(A),
        .B = std::move(B),
        .lambda = Lambda::whole(),
        .base_point = base,
        .intersection = Target::exact(SetSpec::box(make_vector({-1.0, 0.0}), make_vector({0.0, 0.0}))),
        .expected = {},
        .seed_region = {base, 0.5},
        .start = make_vector({-1.4, 0.4}),
        .sequence = std::nullopt,
    };
    s.expected["sr_prime"] = scalar(std::sqrt(2.0), 1e-2, Provenance::Derived);
    return s;
}

} // namespace

const Expected* Scenario::find(const std::string& key) const {
    const auto it = expected.find(key);
    return it == expected.end() ? nullptr : &it->second;
}

double Scenario::expected_value(const std::string& key) const {
    const auto* e = find(key);
    if (!e || !std::holds_alternative<double>(e->value))
        throw DomainError("scenario " + name + ": no scalar expectation \"" + key + "\"");
    return std::get<double>(e->value);
}

SetSpec sawtooth_graph(int depth) {
    if (depth < 0) throw InvariantError("sawtooth depth must be >= 0");
    std::vector<CurvePiece> pieces;
    for (int n = 0; n <= depth; ++n) {
        const double left = std::ldexp(1.0, -(n + 1)), right = std::ldexp(1.0, -n);
        const double mid = 3.0 * std::ldexp(1.0, -(n + 2));
        const Vector bottom = make_vector({mid, -std::ldexp(1.0, -(n + 2))});
        pieces.push_back(Segment{make_vector({left, 0.0}), bottom});
        pieces.push_back(Segment{bottom, make_vector({right, 0.0})});
    }
    pieces.push_back(Segment{make_vector({0.0, 0.0}), make_vector({0.0, 0.0})});
    return SetSpec::curve(std::move(pieces));
}

Scenario geometric(int n) {
    if (n < 1) throw DomainError("geometric scenario: n must be >= 1");
    auto z = [](int k) { return make_vector({std::pow(3.0, -k), 0.0}); };
    Points a, b{z(2 * n)};
    for (int k = 0; k <= n; ++k) a.push_back(z(2 * k));
    for (int k = 0; k < n; ++k) b.push_back(z(2 * k + 1));
    Scenario s{
        .name = "geometric_n" + std::to_string(n),
        .A = SetSpec::points(std::move(a)),
        .B = SetSpec::points(std::move(b)),
        .lambda = Lambda::whole(),
        .base_point = z(2 * n),
        .intersection = Target::exact(SetSpec::points({z(2 * n)})),
        .expected = {},
        .seed_region = {z(2 * n), 1.0},
        .start = z(0),
        .sequence = std::nullopt,
    };
    s.expected["iterations_to_solve"] = scalar(n, 0.0, Provenance::Paper);
    if (n >= 2) s.expected["extendible_c"] = scalar(1.0 / 9.0, 1e-12, Provenance::Derived);
    return s;
}

std::vector<std::string> builtin_names() {
    return {"monotone_not_fejer", "two_lines_pi3", "two_lines_pi2", "sawtooth",
            "geometric_n1",       "geometric_n2",  "geometric_n3",  "epigraph"};
}

Scenario build(const std::string& name) {
    if (name == "monotone_not_fejer") return monotone_not_fejer();
    if (name == "two_lines_pi3") return two_lines_pi3();
    if (name == "two_lines_pi2") return two_lines_pi2();
    if (name == "sawtooth") return sawtooth();
    if (name == "epigraph") return epigraph();
    if (name.rfind("geometric_n", 0) == 0) {
        const auto tail = name.substr(11);
        if (tail == "1" || tail == "2" || tail == "3") return geometric(std::stoi(tail));
    }
    throw DomainError("unknown scenario \"" + name + "\"");
}

std::string_view to_string(ConvexFamily f) {
    switch (f) {
    case ConvexFamily::HalfspaceBall: return "halfspace_ball";
    case ConvexFamily::BoxAffine: return "box_affine";
    case ConvexFamily::BallBall: return "ball_ball";
    }
    return "";
}

ConvexFamily convex_family_from_string(std::string_view s) {
    if (s == "halfspace_ball") return ConvexFamily::HalfspaceBall;
    if (s == "box_affine") return ConvexFamily::BoxAffine;
    if (s == "ball_ball") return ConvexFamily::BallBall;
    throw DomainError("unknown convex family \"" + std::string(s) + "\"");
}

namespace {

Vector unit_vector(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> normal;
    Vector v(dim);
    do {
        for (int i = 0; i < dim; ++i) v[i] = normal(rng);
    } while (v.norm() < 1e-6);
    return v.normalized();
}

// Two unit vectors whose inner product stays above -0.8, so that the two
// sets never touch only tangentially from opposite sides.
std::pair<Vector, Vector> non_opposed(std::mt19937_64& rng, int dim) {
    Vector u = unit_vector(rng, dim);
    for (int tries = 0; tries < 1000; ++tries) {
        Vector v = unit_vector(rng, dim);
        if (u.dot(v) >= -0.8) return {std::move(u), std::move(v)};
    }
    return {u, u};
}

} // namespace

Scenario random_convex_pair(std::uint64_t seed, int dim, ConvexFamily family) {
    if (dim < 2 || dim > 8) throw DomainError("random_convex_pair: dim must lie in 2..8");
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(dim) * 131 +
                        static_cast<std::uint64_t>(family));
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> uniform(0.5, 2.0);
    auto gaussian = [&] {
        Vector v(dim);
        for (int i = 0; i < dim; ++i) v[i] = normal(rng);
        return v;
    };

    std::optional<SetSpec> A, B;
    Vector base;
    switch (family) {
    case ConvexFamily::HalfspaceBall: {
        const Vector c = gaussian();
        const double r = uniform(rng);
        auto [u, n] = non_opposed(rng, dim);
        base = c + r * u;
        A = SetSpec::halfspace(n, n.dot(base));
        B = SetSpec::ball(c, r);
        break;
    }
    case ConvexFamily::BallBall: {
        base = gaussian();
        auto [u1, u2] = non_opposed(rng, dim);
        const double r1 = uniform(rng), r2 = uniform(rng);
        A = SetSpec::ball(base - r1 * u1, r1);
        B = SetSpec::ball(base - r2 * u2, r2);
        break;
    }
    case ConvexFamily::BoxAffine: {
        const Vector m = gaussian();
        Vector half(dim);
        for (int i = 0; i < dim; ++i) half[i] = uniform(rng);
        std::uniform_int_distribution<int> k_dist(1, dim - 1);
        const int k = k_dist(rng);
        Points dirs;
        for (int i = 0; i < k; ++i) dirs.push_back(gaussian());
        base = m;
        A = SetSpec::box(m - half, m + half);
        B = SetSpec::affine_span(m, dirs);
        break;
    }
    }
    const double residual = residual_map(OperatorSpec::ap(*A, *B), base);
    if (residual > 1e-9) throw InvariantError("random_convex_pair: constructed point is not common");

    Scenario s{
        .name = std::string(to_string(family)) + "_d" + std::to_string(dim) + "_s" + std::to_string(seed),
        .A = *A,
        .B = *B,
        .lambda = Lambda::whole(),
        .base_point = base,
        .intersection = Target::intersection(*A, *B),
        .expected = {},
        .seed_region = {base, 0.5},
        .start = std::nullopt,
        .sequence = std::nullopt,
    };
    s.expected["common_point_residual"] = scalar(0.0, 1e-9, Provenance::Derived);
    return s;
}

Json scenario_json(const Scenario& s) {
    Json j;
    j["name"] = s.name;
    j["A"] = set_json(s.A);
    j["B"] = set_json(s.B);
    j["lambda"] = lambda_json(s.lambda);
    j["base_point"] = vector_json(s.base_point);
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SetSpec>)
                j["intersection"] = set_json(v);
            else if constexpr (std::is_same_v<T, Probe>)
                j["intersection"] = {{"probe", points_json(v.points)}};
            else
                j["intersection"] = "convex";
        },
        s.intersection.variant());
    Json ex = Json::object();
    for (const auto& [key, e] : s.expected) {
        Json ej;
        if (const auto* d = std::get_if<double>(&e.value))
            ej["value"] = real_json(*d);
        else
            ej["value"] = points_json(std::get<Points>(e.value));
        ej["tolerance"] = real_json(e.tolerance);
        ej["provenance"] = std::string(to_string(e.provenance));
        ex[key] = std::move(ej);
    }
    j["expected"] = std::move(ex);
    j["seed_region"] = {{"center", vector_json(s.seed_region.center)},
                        {"radius", real_json(s.seed_region.radius)}};
    if (s.start) j["start"] = vector_json(*s.start);
    if (s.sequence) j["sequence"] = points_json(*s.sequence);
    return j;
}

Scenario scenario_from_json(const Json& j) {
    reject_unknown_keys(j, {"name", "A", "B", "lambda", "base_point", "intersection", "expected",
                            "seed_region", "start", "sequence"},
                        "scenario");
    auto need = [&](const char* key) -> const Json& {
        if (!j.contains(key)) throw SchemaError(std::string("scenario: missing \"") + key + "\"");
        return j.at(key);
    };
    SetSpec A = set_from_json(need("A"));
    SetSpec B = set_from_json(need("B"));
    if (A.dim() != B.dim()) throw DimensionError("scenario: A and B differ in dimension");
    const Vector base = vector_from_json(need("base_point"), "base_point");
    require_dim(base, A.dim(), "base_point");

    const Json& ij = j.contains("intersection") ? j.at("intersection") : Json("convex");
    std::optional<Target> target;
    if (ij.is_string() && ij.get<std::string>() == "convex") {
        target = Target::intersection(A, B);
    } else if (ij.is_object() && ij.contains("probe")) {
        reject_unknown_keys(ij, {"probe"}, "intersection");
        target = Target::probe(points_from_json(ij.at("probe"), "intersection probe"));
    } else {
        target = Target::exact(set_from_json(ij));
    }

    Region region{base, 1.0};
    if (j.contains("seed_region")) {
        const auto& r = j.at("seed_region");
        reject_unknown_keys(r, {"center", "radius"}, "seed_region");
        region.center = r.contains("center") ? vector_from_json(r.at("center"), "seed_region center") : base;
        region.radius = r.contains("radius") ? real_from_json(r.at("radius"), "seed_region radius") : 1.0;
        require_dim(region.center, A.dim(), "seed_region center");
        if (!(region.radius > 0.0)) throw SchemaError("seed_region: radius must be > 0");
    }

    Scenario s{
        .name = j.value("name", std::string("user")),
        .A = A,
        .B = B,
        .lambda = lambda_from_json(j.contains("lambda") ? j.at("lambda") : Json(nullptr), A.dim()),
        .base_point = base,
        .intersection = std::move(*target),
        .expected = {},
        .seed_region = region,
        .start = std::nullopt,
        .sequence = std::nullopt,
    };
    if (j.contains("start")) {
        s.start = vector_from_json(j.at("start"), "start");
        require_dim(*s.start, A.dim(), "start");
    }
    if (j.contains("sequence")) s.sequence = points_from_json(j.at("sequence"), "sequence");
    if (j.contains("expected")) {
        const auto& ex = j.at("expected");
        if (!ex.is_object()) throw SchemaError("expected: must be an object");
        for (const auto& [key, e] : ex.items()) {
            reject_unknown_keys(e, {"value", "tolerance", "provenance"}, "expected value");
            if (!e.contains("value")) throw SchemaError("expected value: missing \"value\"");
            Expected x;
            const auto& v = e.at("value");
            if (v.is_array())
                x.value = points_from_json(v, "expected points");
            else
                x.value = real_from_json(v, "expected value");
            x.tolerance = e.contains("tolerance") ? real_from_json(e.at("tolerance"), "tolerance") : 0.0;
            x.provenance = provenance_from_string(e.value("provenance", std::string("derived")));
            s.expected[key] = std::move(x);
        }
    }
    return s;
}

} // namespace fixpoint
