#include "fixpoint/geometry.hpp"

#include "curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fixpoint {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_planar(const Vector& v, const char* what) {
    require_finite(v, what);
    require_dim(v, 2, what);
}

void check_orthonormal(const Points& basis, Eigen::Index dim) {
    if (static_cast<Eigen::Index>(basis.size()) > dim)
        throw InvariantError("affine subspace: more basis vectors than dimensions");
    for (std::size_t i = 0; i < basis.size(); ++i) {
        require_finite(basis[i], "affine subspace basis");
        require_dim(basis[i], dim, "affine subspace basis");
        for (std::size_t j = 0; j <= i; ++j) {
            const double expect = i == j ? 1.0 : 0.0;
            if (std::abs(basis[i].dot(basis[j]) - expect) > 1e-9)
                throw InvariantError("affine subspace: basis is not orthonormal");
        }
    }
}

// Every curve/epigraph candidate, unfiltered.
std::vector<detail::Candidate> curve_candidates(const PiecewiseCurve& c, const Vector& x) {
    std::vector<detail::Candidate> out;
    for (const auto& piece : c.pieces) {
        std::visit(overloaded{
                       [&](const Segment& s) { detail::segment_candidates(s.from, s.to, x, out); },
                       [&](const Parabola& p) {
                           detail::quadratic_candidates(p.a, p.b, p.c, p.t0, p.t1, x, out);
                       },
                   },
                   piece);
    }
    return out;
}

std::vector<detail::Candidate> graph_candidates(const Epigraph& e, const Vector& x) {
    std::vector<detail::Candidate> out;
    const std::size_t n = e.pieces.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double lo = i == 0 ? -kInf : e.breakpoints[i - 1];
        const double hi = i + 1 == n ? kInf : e.breakpoints[i];
        const auto& q = e.pieces[i];
        detail::quadratic_candidates(q.a, q.b, q.c, lo, hi, x, out);
    }
    return out;
}

Projection select_nearest(std::vector<detail::Candidate> cands, const Tolerances& tol,
                          bool single) {
    double best = kInf;
    for (const auto& c : cands) best = std::min(best, c.dist);
    Points pts;
    for (auto& c : cands)
        if (c.dist <= best + tol.tie) pts.push_back(c.point);
    pts = sorted_unique(std::move(pts), tol.identical);
    if (single && pts.size() > 1) {
        // convex set: spurious ties come from rounding; keep the true minimizer
        const auto it = std::min_element(cands.begin(), cands.end(),
                                         [](const auto& l, const auto& r) { return l.dist < r.dist; });
        return {Points{it->point}, false};
    }
    return {std::move(pts), false};
}

double min_dist(const std::vector<detail::Candidate>& cands) {
    double best = kInf;
    for (const auto& c : cands) best = std::min(best, c.dist);
    return best;
}

bool epigraph_contains(const Epigraph& e, const Vector& x) { return x[1] >= evaluate(e, x[0]); }

Vector affine_projection(const AffineSubspace& s, const Vector& x) {
    Vector p = s.point;
    const Vector r = x - s.point;
    for (const auto& u : s.basis) p += u.dot(r) * u;
    return p;
}

Vector halfspace_projection(const Halfspace& h, const Vector& x) {
    const double excess = h.normal.dot(x) - h.offset;
    if (excess <= 0.0) return x;
    return x - (excess / h.normal.squaredNorm()) * h.normal;
}

Vector ball_projection(const Ball& b, const Vector& x) {
    const Vector r = x - b.center;
    const double n = r.norm();
    if (n <= b.radius) return x;
    return b.center + (b.radius / n) * r;
}

Vector box_projection(const Box& b, const Vector& x) { return x.cwiseMax(b.lo).cwiseMin(b.hi); }

} // namespace

// ---------------------------------------------------------------------------
// construction

SetSpec SetSpec::halfspace(Vector normal, double offset) {
    require_finite(normal, "halfspace normal");
    if (!std::isfinite(offset)) throw InvariantError("halfspace: non-finite offset");
    if (normal.norm() == 0.0) throw InvariantError("halfspace: zero normal");
    const auto d = normal.size();
    return {Halfspace{std::move(normal), offset}, d};
}

SetSpec SetSpec::affine(Vector point, Points basis) {
    require_finite(point, "affine subspace point");
    check_orthonormal(basis, point.size());
    const auto d = point.size();
    return {AffineSubspace{std::move(point), std::move(basis)}, d};
}

SetSpec SetSpec::affine_span(Vector point, const Points& directions) {
    require_finite(point, "affine subspace point");
    Points basis;
    for (const auto& d : directions) {
        require_dim(d, point.size(), "affine subspace direction");
        Vector u = d;
        for (const auto& b : basis) u -= b.dot(u) * b;
        for (const auto& b : basis) u -= b.dot(u) * b;
        const double n = u.norm();
        if (n > 1e-12 * std::max(1.0, d.norm())) basis.push_back(u / n);
    }
    return affine(std::move(point), std::move(basis));
}

SetSpec SetSpec::ball(Vector center, double radius) {
    require_finite(center, "ball center");
    if (!(radius >= 0.0) || !std::isfinite(radius)) throw InvariantError("ball: radius must be >= 0");
    const auto d = center.size();
    return {Ball{std::move(center), radius}, d};
}

SetSpec SetSpec::box(Vector lo, Vector hi) {
    require_finite(lo, "box lo");
    require_finite(hi, "box hi");
    require_dim(hi, lo.size(), "box hi");
    if ((lo.array() > hi.array()).any()) throw InvariantError("box: lo exceeds hi");
    const auto d = lo.size();
    return {Box{std::move(lo), std::move(hi)}, d};
}

SetSpec SetSpec::sphere(Vector center, double radius) {
    require_finite(center, "sphere center");
    if (!(radius > 0.0) || !std::isfinite(radius)) throw InvariantError("sphere: radius must be > 0");
    const auto d = center.size();
    return {Sphere{std::move(center), radius}, d};
}

SetSpec SetSpec::points(Points pts) {
    if (pts.empty()) throw InvariantError("finite point set: empty");
    const auto d = pts.front().size();
    for (const auto& p : pts) {
        require_finite(p, "finite point set");
        require_dim(p, d, "finite point set");
    }
    return {FinitePointSet{std::move(pts)}, d};
}

SetSpec SetSpec::curve(std::vector<CurvePiece> pieces) {
    if (pieces.empty()) throw InvariantError("piecewise curve: no pieces");
    for (const auto& piece : pieces) {
        std::visit(overloaded{
                       [](const Segment& s) {
                           require_planar(s.from, "curve segment");
                           require_planar(s.to, "curve segment");
                       },
                       [](const Parabola& p) {
                           for (double v : {p.a, p.b, p.c, p.t0, p.t1})
                               if (!std::isfinite(v)) throw InvariantError("curve parabola: non-finite parameter");
                           if (p.t0 > p.t1) throw InvariantError("curve parabola: t0 > t1");
                       },
                   },
                   piece);
    }
    return {PiecewiseCurve{std::move(pieces)}, 2};
}

SetSpec SetSpec::epigraph(std::vector<double> breakpoints, std::vector<Quadratic> pieces,
                          bool convex) {
    if (pieces.size() != breakpoints.size() + 1)
        throw InvariantError("epigraph: need exactly one more piece than breakpoints");
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (!std::isfinite(breakpoints[i])) throw InvariantError("epigraph: non-finite breakpoint");
        if (i > 0 && !(breakpoints[i] > breakpoints[i - 1]))
            throw InvariantError("epigraph: breakpoints must increase");
    }
    for (const auto& q : pieces)
        if (!std::isfinite(q.a) || !std::isfinite(q.b) || !std::isfinite(q.c))
            throw InvariantError("epigraph: non-finite coefficient");
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        const double t = breakpoints[i];
        const auto& l = pieces[i];
        const auto& r = pieces[i + 1];
        const double fl = (l.a * t + l.b) * t + l.c, fr = (r.a * t + r.b) * t + r.c;
        if (std::abs(fl - fr) > 1e-9 * (1.0 + std::abs(fl)))
            throw InvariantError("epigraph: function is discontinuous at a breakpoint");
    }
    return {Epigraph{std::move(breakpoints), std::move(pieces), convex}, 2};
}

SetSpec SetSpec::set_union(std::vector<SetSpec> members) {
    if (members.empty()) throw InvariantError("union: no members");
    const auto d = members.front().dim();
    for (const auto& m : members)
        if (m.dim() != d) throw DimensionError("union: members of different dimension");
    return {Union{std::move(members)}, d};
}

SetSpec SetSpec::whole(Eigen::Index dim) {
    if (dim < 1) throw InvariantError("whole space: dimension must be >= 1");
    return {WholeSpace{dim}, dim};
}

std::string_view SetSpec::name() const {
    return std::visit(overloaded{
                          [](const Halfspace&) { return std::string_view("halfspace"); },
                          [](const AffineSubspace&) { return std::string_view("affine_subspace"); },
                          [](const Ball&) { return std::string_view("ball"); },
                          [](const Box&) { return std::string_view("box"); },
                          [](const Sphere&) { return std::string_view("sphere"); },
                          [](const FinitePointSet&) { return std::string_view("finite_point_set"); },
                          [](const PiecewiseCurve&) { return std::string_view("piecewise_curve"); },
                          [](const Epigraph&) { return std::string_view("epigraph"); },
                          [](const Union&) { return std::string_view("union"); },
                          [](const WholeSpace&) { return std::string_view("whole_space"); },
                      },
                      v_);
}

bool SetSpec::is_convex() const {
    return std::visit(overloaded{
                          [](const Sphere&) { return false; },
                          [](const FinitePointSet& f) { return f.points.size() == 1; },
                          [](const PiecewiseCurve& c) {
                              if (c.pieces.size() != 1) return false;
                              if (std::holds_alternative<Segment>(c.pieces.front())) return true;
                              const auto& p = std::get<Parabola>(c.pieces.front());
                              return p.a == 0.0 || p.t0 == p.t1;
                          },
                          [](const Epigraph& e) { return e.convex; },
                          [](const Union&) { return false; },
                          [](const auto&) { return true; },
                      },
                      v_);
}

// ---------------------------------------------------------------------------
// distance and projection

double evaluate(const Epigraph& e, double t) {
    const auto it = std::upper_bound(e.breakpoints.begin(), e.breakpoints.end(), t);
    const auto& q = e.pieces[static_cast<std::size_t>(it - e.breakpoints.begin())];
    return (q.a * t + q.b) * t + q.c;
}

double distance(const SetSpec& s, const Vector& x) {
    require_dim(x, s.dim(), "distance query");
    return std::visit(
        overloaded{
            [&](const Halfspace& h) { return std::max(0.0, (h.normal.dot(x) - h.offset) / h.normal.norm()); },
            [&](const AffineSubspace& a) { return (x - affine_projection(a, x)).norm(); },
            [&](const Ball& b) { return std::max(0.0, (x - b.center).norm() - b.radius); },
            [&](const Box& b) { return (x - box_projection(b, x)).norm(); },
            [&](const Sphere& sp) { return std::abs((x - sp.center).norm() - sp.radius); },
            [&](const FinitePointSet& f) {
                double best = kInf;
                for (const auto& p : f.points) best = std::min(best, (x - p).norm());
                return best;
            },
            [&](const PiecewiseCurve& c) { return min_dist(curve_candidates(c, x)); },
            [&](const Epigraph& e) { return epigraph_contains(e, x) ? 0.0 : min_dist(graph_candidates(e, x)); },
            [&](const Union& u) {
                double best = kInf;
                for (const auto& m : u.members) best = std::min(best, distance(m, x));
                return best;
            },
            [&](const WholeSpace&) { return 0.0; },
        },
        s.variant());
}

Projection project_all(const SetSpec& s, const Vector& x, const Tolerances& tol) {
    require_dim(x, s.dim(), "projection query");
    auto single = [](Vector p) { return Projection{Points{std::move(p)}, false}; };
    return std::visit(
        overloaded{
            [&](const Halfspace& h) { return single(halfspace_projection(h, x)); },
            [&](const AffineSubspace& a) { return single(affine_projection(a, x)); },
            [&](const Ball& b) { return single(ball_projection(b, x)); },
            [&](const Box& b) { return single(box_projection(b, x)); },
            [&](const Sphere& sp) {
                const Vector r = x - sp.center;
                const double n = r.norm();
                if (n == 0.0) {
                    Vector p = sp.center;
                    p[0] += sp.radius;
                    return Projection{Points{std::move(p)}, true};
                }
                return single(sp.center + (sp.radius / n) * r);
            },
            [&](const FinitePointSet& f) {
                std::vector<detail::Candidate> cands;
                for (const auto& p : f.points) cands.push_back({p, (x - p).norm()});
                return select_nearest(std::move(cands), tol, false);
            },
            [&](const PiecewiseCurve& c) { return select_nearest(curve_candidates(c, x), tol, s.is_convex()); },
            [&](const Epigraph& e) {
                if (epigraph_contains(e, x)) return single(x);
                return select_nearest(graph_candidates(e, x), tol, e.convex);
            },
            [&](const Union& u) {
                std::vector<double> dists;
                double best = kInf;
                for (const auto& m : u.members) {
                    dists.push_back(distance(m, x));
                    best = std::min(best, dists.back());
                }
                std::vector<detail::Candidate> cands;
                bool continuum = false;
                for (std::size_t i = 0; i < u.members.size(); ++i) {
                    if (dists[i] > best + tol.tie) continue;
                    auto p = project_all(u.members[i], x, tol);
                    continuum = continuum || p.continuum;
                    for (auto& q : p.points) {
                        const double d = (x - q).norm();
                        cands.push_back({std::move(q), d});
                    }
                }
                auto out = select_nearest(std::move(cands), tol, false);
                out.continuum = continuum;
                return out;
            },
            [&](const WholeSpace&) { return single(x); },
        },
        s.variant());
}

Vector project_one(const SetSpec& s, const Vector& x, const Tolerances& tol) {
    return project_all(s, x, tol).points.front();
}

bool contains(const SetSpec& s, const Vector& x, const Tolerances& tol) {
    return distance(s, x) <= tol.membership;
}

NormalPair proximal_normal(const SetSpec& s, const Vector& w, const Tolerances& tol) {
    if (distance(s, w) <= tol.membership)
        throw DomainError("proximal_normal: query point lies in the set");
    Vector a = project_one(s, w, tol);
    Vector v = w - a;
    return {std::move(a), std::move(v)};
}

double elemental_subreg_estimate(std::span<const Vector> sample, const NormalPair& pair,
                                 const Region& neighborhood) {
    const double vnorm = pair.direction.norm();
    if (vnorm == 0.0) throw DomainError("elemental_subreg_estimate: zero normal direction");
    double eps = 0.0;
    std::size_t used = 0;
    for (const auto& x : sample) {
        if (!neighborhood.contains(x)) continue;
        const Vector r = x - pair.base;
        const double rn = r.norm();
        if (rn <= kRatioFloor) continue;
        ++used;
        eps = std::max(eps, pair.direction.dot(r) / (vnorm * rn));
    }
    if (used == 0) throw DomainError("elemental_subreg_estimate: empty sample after filtering");
    return eps;
}

// ---------------------------------------------------------------------------
// Lambda

Lambda Lambda::affine(SetSpec subspace) {
    if (!std::holds_alternative<AffineSubspace>(subspace.variant()))
        throw InvariantError("Lambda must be the whole space or an affine subspace");
    Lambda l;
    l.subspace_ = std::make_shared<const SetSpec>(std::move(subspace));
    return l;
}

Vector Lambda::project(const Vector& x) const { return subspace_ ? project_one(*subspace_, x) : x; }

bool Lambda::contains(const Vector& x, double tol) const {
    return !subspace_ || distance(*subspace_, x) <= tol;
}

bool operator==(const Lambda& a, const Lambda& b) {
    if (a.is_whole() || b.is_whole()) return a.is_whole() == b.is_whole();
    const auto& sa = std::get<AffineSubspace>(a.subspace()->variant());
    const auto& sb = std::get<AffineSubspace>(b.subspace()->variant());
    if (sa.point != sb.point || sa.basis.size() != sb.basis.size()) return false;
    for (std::size_t i = 0; i < sa.basis.size(); ++i)
        if (sa.basis[i] != sb.basis[i]) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Target

Target Target::exact(SetSpec s) { return Target(std::move(s)); }

Target Target::probe(Points points) {
    if (points.empty()) throw DomainError("target probe: empty");
    return Target(Probe{std::move(points)});
}

Target Target::intersection(SetSpec a, SetSpec b) {
    if (a.dim() != b.dim()) throw DimensionError("intersection: dimension mismatch");
    if (!a.is_convex() || !b.is_convex()) throw InvariantError("intersection target needs convex sets");
    return Target(ConvexIntersection{std::make_shared<const SetSpec>(std::move(a)),
                                     std::make_shared<const SetSpec>(std::move(b))});
}

Vector nearest(const Target& t, const Vector& x) {
    return std::visit(overloaded{
                          [&](const SetSpec& s) { return project_one(s, x); },
                          [&](const Probe& p) {
                              if (p.points.empty()) throw DomainError("target probe: empty");
                              const Vector* best = &p.points.front();
                              double bd = kInf;
                              for (const auto& q : p.points) {
                                  const double d = (x - q).norm();
                                  if (d < bd) {
                                      bd = d;
                                      best = &q;
                                  }
                              }
                              return *best;
                          },
                          [&](const ConvexIntersection& c) {
                              return project_convex_intersection(*c.first, *c.second, x);
                          },
                      },
                      t.variant());
}

double distance(const Target& t, const Vector& x) {
    if (const auto* s = std::get_if<SetSpec>(&t.variant())) return distance(*s, x);
    return (x - nearest(t, x)).norm();
}

namespace {

constexpr double kFeasTol = 1e-12;

bool feasible(const SetSpec& s, const Vector& x) {
    return distance(s, x) <= kFeasTol * std::max(1.0, x.norm());
}

Vector halfspace_ball_meet(const Halfspace& h, const Ball& b, const Vector& x) {
    const Vector ph = halfspace_projection(h, x);
    const double nn = h.normal.squaredNorm();
    const Vector c = b.center - ((h.normal.dot(b.center) - h.offset) / nn) * h.normal;
    const double rho2 = b.radius * b.radius - (b.center - c).squaredNorm();
    const double rho = std::sqrt(std::max(0.0, rho2));
    const Vector r = ph - c;
    const double rn = r.norm();
    if (rn == 0.0) return ph;
    return c + (rho / rn) * r;
}

Vector ball_ball_meet(const Ball& b1, const Ball& b2, const Vector& x) {
    const Vector axis = b2.center - b1.center;
    const double d = axis.norm();
    if (d == 0.0) return ball_projection(b1.radius <= b2.radius ? b1 : b2, x);
    const Vector e = axis / d;
    const double a = (d * d + b1.radius * b1.radius - b2.radius * b2.radius) / (2.0 * d);
    const Vector m = b1.center + a * e;
    const double rho = std::sqrt(std::max(0.0, b1.radius * b1.radius - a * a));
    Vector r = x - m;
    r -= r.dot(e) * e;
    double rn = r.norm();
    if (rn == 0.0) {
        // any direction orthogonal to the axis
        Eigen::Index k = 0;
        e.cwiseAbs().minCoeff(&k);
        r = Vector::Unit(x.size(), k);
        r -= r.dot(e) * e;
        rn = r.norm();
    }
    return m + (rho / rn) * r;
}

Vector dykstra(const SetSpec& a, const SetSpec& b, const Vector& x0) {
    Vector x = x0;
    Vector p = Vector::Zero(x0.size());
    Vector q = Vector::Zero(x0.size());
    for (int iter = 0; iter < 200000; ++iter) {
        const Vector y = project_one(a, x + p);
        p = x + p - y;
        const Vector xn = project_one(b, y + q);
        q = y + q - xn;
        const double change = (xn - x).norm();
        const double gap = (xn - y).norm();
        x = xn;
        if (change <= 1e-16 * std::max(1.0, x.norm()) && gap <= 1e-13 * std::max(1.0, x.norm())) break;
    }
    return x;
}

} // namespace

Vector project_convex_intersection(const SetSpec& a, const SetSpec& b, const Vector& x) {
    require_dim(x, a.dim(), "intersection query");
    if (std::holds_alternative<WholeSpace>(a.variant())) return project_one(b, x);
    if (std::holds_alternative<WholeSpace>(b.variant())) return project_one(a, x);
    const Vector pa = project_one(a, x);
    if (feasible(b, pa)) return pa;
    const Vector pb = project_one(b, x);
    if (feasible(a, pb)) return pb;

    const auto* ha = std::get_if<Halfspace>(&a.variant());
    const auto* hb = std::get_if<Halfspace>(&b.variant());
    const auto* ba = std::get_if<Ball>(&a.variant());
    const auto* bb = std::get_if<Ball>(&b.variant());
    if (ha && bb) return halfspace_ball_meet(*ha, *bb, x);
    if (hb && ba) return halfspace_ball_meet(*hb, *ba, x);
    if (ba && bb) return ball_ball_meet(*ba, *bb, x);
    return dykstra(a, b, x);
}

} // namespace fixpoint
