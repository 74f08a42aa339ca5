#pragma once

// Closed sets with exact distance functions and (possibly multivalued)
// projectors, proximal normals and the elemental-subregularity estimate.
//
// Every set variant admits a finite candidate enumeration for its nearest
// points, so `project_all` is exact up to floating point: it returns every
// nearest point whose distance ties the minimum within `Tolerances::tie`,
// sorted lexicographically. `project_one` is the deterministic selection used
// by the iteration engine (the lexicographically smallest nearest point).

#include "fixpoint/types.hpp"

#include <memory>
#include <span>
#include <string_view>
#include <variant>

namespace fixpoint {

/// {x : <normal, x> <= offset}
struct Halfspace {
    Vector normal;
    double offset = 0.0;
};

/// point + span(basis); the basis is orthonormal and may be empty.
struct AffineSubspace {
    Vector point;
    Points basis;
};

struct Ball {
    Vector center;
    double radius = 0.0;
};

struct Box {
    Vector lo;
    Vector hi;
};

/// The (nonconvex) sphere of radius > 0.
struct Sphere {
    Vector center;
    double radius = 1.0;
};

struct FinitePointSet {
    Points points;
};

/// Closed segment [from, to] in R^2 (from == to is a single point).
struct Segment {
    Vector from;
    Vector to;
};

/// {(t, a t^2 + b t + c) : t in [t0, t1]} in R^2.
struct Parabola {
    double a = 0.0, b = 0.0, c = 0.0;
    double t0 = 0.0, t1 = 0.0;
};

using CurvePiece = std::variant<Segment, Parabola>;

/// Union of finitely many segments and parabolic arcs in R^2.
struct PiecewiseCurve {
    std::vector<CurvePiece> pieces;
};

/// f(t) = a t^2 + b t + c on one interval of an epigraph's domain.
struct Quadratic {
    double a = 0.0, b = 0.0, c = 0.0;
};

/// epi f in R^2 for a continuous piecewise-quadratic f on R. `pieces` has
/// one more entry than `breakpoints`: piece i lives on [bp[i-1], bp[i]] with
/// the outer pieces unbounded.
struct Epigraph {
    std::vector<double> breakpoints;
    std::vector<Quadratic> pieces;
    bool convex = false;
};

class SetSpec;

struct Union {
    std::vector<SetSpec> members;
};

struct WholeSpace {
    Eigen::Index dim = 0;
};

/// Immutable tagged description of a nonempty closed subset of R^d.
class SetSpec {
public:
    using Variant = std::variant<Halfspace, AffineSubspace, Ball, Box, Sphere, FinitePointSet,
                                 PiecewiseCurve, Epigraph, Union, WholeSpace>;

    static SetSpec halfspace(Vector normal, double offset);
    static SetSpec affine(Vector point, Points orthonormal_basis);
    /// Affine subspace point + span(directions); directions need not be orthonormal.
    static SetSpec affine_span(Vector point, const Points& directions);
    static SetSpec ball(Vector center, double radius);
    static SetSpec box(Vector lo, Vector hi);
    static SetSpec sphere(Vector center, double radius);
    static SetSpec points(Points points);
    static SetSpec curve(std::vector<CurvePiece> pieces);
    static SetSpec epigraph(std::vector<double> breakpoints, std::vector<Quadratic> pieces,
                            bool convex);
    static SetSpec set_union(std::vector<SetSpec> members);
    static SetSpec whole(Eigen::Index dim);

    const Variant& variant() const { return v_; }
    Eigen::Index dim() const { return dim_; }
    std::string_view name() const;

    /// True for the variants whose projector is single-valued everywhere.
    bool is_convex() const;

private:
    SetSpec(Variant v, Eigen::Index dim) : v_(std::move(v)), dim_(dim) {}

    Variant v_;
    Eigen::Index dim_;
};

/// Result of a projector evaluation.
struct Projection {
    Points points;          // nonempty, lexicographically sorted
    bool continuum = false; // the true fiber is infinite; `points` holds a canonical member
};

double distance(const SetSpec& s, const Vector& x);
Projection project_all(const SetSpec& s, const Vector& x,
                       const Tolerances& tol = default_tolerances);
Vector project_one(const SetSpec& s, const Vector& x, const Tolerances& tol = default_tolerances);
bool contains(const SetSpec& s, const Vector& x, const Tolerances& tol = default_tolerances);

/// Value of the function whose epigraph is described.
double evaluate(const Epigraph& epi, double t);

/// A proximal normal: `direction` is w - base for some w projecting onto `base`.
struct NormalPair {
    Vector base;
    Vector direction;
};

/// (P w, w - P w) for w outside s. Throws DomainError when w lies in s.
NormalPair proximal_normal(const SetSpec& s, const Vector& w,
                           const Tolerances& tol = default_tolerances);

/// Closed ball B_radius(center) used as a neighborhood or sampling region.
struct Region {
    Vector center;
    double radius = 0.0;

    bool contains(const Vector& x) const { return (x - center).norm() <= radius; }
};

/// max(0, max_{x in sample, x in U, x != a} <v, x - a> / (|v| |x - a|)).
/// A lower bound on the elemental-subregularity constant of the set on U.
/// Throws DomainError when no sample point survives the filtering.
double elemental_subreg_estimate(std::span<const Vector> sample, const NormalPair& pair,
                                 const Region& neighborhood);

/// The constraint set Lambda: either all of E or an affine subspace.
class Lambda {
public:
    Lambda() = default;
    static Lambda whole() { return {}; }
    static Lambda affine(SetSpec subspace);

    bool is_whole() const { return !subspace_; }
    const SetSpec* subspace() const { return subspace_.get(); }

    Vector project(const Vector& x) const;
    bool contains(const Vector& x, double tol = default_tolerances.membership) const;

private:
    std::shared_ptr<const SetSpec> subspace_;
};

bool operator==(const Lambda& a, const Lambda& b);

/// Finite sample of a set that has no usable closed form.
struct Probe {
    Points points;
};

/// A ∩ B of two convex sets; nearest points via closed forms or Dykstra.
struct ConvexIntersection {
    std::shared_ptr<const SetSpec> first;
    std::shared_ptr<const SetSpec> second;
};

/// Reference set for distances such as dist(x, A ∩ B) or dist(x, Fix T).
class Target {
public:
    using Variant = std::variant<SetSpec, Probe, ConvexIntersection>;

    static Target exact(SetSpec s);
    static Target probe(Points points);
    static Target intersection(SetSpec a, SetSpec b);

    const Variant& variant() const { return v_; }
    bool is_exact() const { return !std::holds_alternative<Probe>(v_); }

private:
    explicit Target(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

double distance(const Target& t, const Vector& x);
Vector nearest(const Target& t, const Vector& x);

/// Nearest point of A ∩ B for convex A, B with nonempty intersection.
/// Uses closed forms for ball/halfspace/affine/whole-space pairs where known,
/// Dykstra's algorithm otherwise.
Vector project_convex_intersection(const SetSpec& a, const SetSpec& b, const Vector& x);

} // namespace fixpoint
