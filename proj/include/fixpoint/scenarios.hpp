#pragma once

// Built-in worked examples and seeded random convex pairs, each with the
// ground-truth values a run is expected to reproduce.

#include "fixpoint/serialize.hpp"

#include <map>

namespace fixpoint {

enum class Provenance { Paper, Trivial, Derived };

std::string_view to_string(Provenance p);

struct Expected {
    std::variant<double, Points> value;
    double tolerance = 0.0;
    Provenance provenance = Provenance::Derived;
};

struct Scenario {
    std::string name;
    SetSpec A;
    SetSpec B;
    Lambda lambda;
    Vector base_point;
    Target intersection; // A ∩ B, exact where a closed form exists
    std::map<std::string, Expected> expected;
    Region seed_region;
    std::optional<Vector> start;
    std::optional<Points> sequence; // explicit sequence instead of an operator trace

    const Expected* find(const std::string& key) const;
    double expected_value(const std::string& key) const; // throws if absent or not scalar
};

/// Names accepted by build().
std::vector<std::string> builtin_names();

/// Throws DomainError for unknown names.
Scenario build(const std::string& name);

/// The sawtooth graph truncated after `depth` teeth, plus the point (0,0).
SetSpec sawtooth_graph(int depth = 20);

/// Geometric finite sets: z_k = 3^-k (1,0), A = {z_0, z_2, …, z_2n},
/// B = {z_2n} ∪ {z_1, z_3, …, z_{2n−1}}.
Scenario geometric(int n);

enum class ConvexFamily { HalfspaceBall, BoxAffine, BallBall };

std::string_view to_string(ConvexFamily f);
ConvexFamily convex_family_from_string(std::string_view s);

/// Intersecting convex pair in R^dim with a constructed common point x̄.
Scenario random_convex_pair(std::uint64_t seed, int dim, ConvexFamily family);

Json scenario_json(const Scenario& s);
Scenario scenario_from_json(const Json& j);

} // namespace fixpoint
