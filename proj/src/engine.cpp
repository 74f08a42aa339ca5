#include "fixpoint/engine.hpp"

#include "fixpoint/sampling.hpp"

#include <cmath>
#include <limits>

namespace fixpoint {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kMaxCandidates = 256;

Points reflect_all(const SetSpec& s, const Vector& x) {
    Points out;
    for (const auto& p : project_all(s, x).points) out.push_back(2.0 * p - x);
    return out;
}

Points unique_capped(Points pts) {
    pts = sorted_unique(std::move(pts), default_tolerances.identical);
    if (pts.size() > kMaxCandidates) pts.resize(kMaxCandidates);
    return pts;
}

} // namespace

OperatorSpec OperatorSpec::ap(SetSpec A, SetSpec B) {
    if (A.dim() != B.dim()) throw DimensionError("AP: sets of different dimension");
    const auto d = A.dim();
    return {AlternatingProjections{std::move(A), std::move(B)}, d};
}

OperatorSpec OperatorSpec::dr(SetSpec A, SetSpec B) {
    if (A.dim() != B.dim()) throw DimensionError("DR: sets of different dimension");
    const auto d = A.dim();
    return {DouglasRachford{std::move(A), std::move(B)}, d};
}

OperatorSpec OperatorSpec::relax(OperatorSpec inner, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvariantError("relaxation: alpha must lie in (0,1)");
    const auto d = inner.dim();
    return {Relaxation{std::make_shared<const OperatorSpec>(std::move(inner)), alpha}, d};
}

OperatorSpec OperatorSpec::compose(std::vector<OperatorSpec> ops) {
    if (ops.empty()) throw InvariantError("composition: no operators");
    const auto d = ops.front().dim();
    for (const auto& o : ops)
        if (o.dim() != d) throw DimensionError("composition: operators of different dimension");
    return {Composition{std::move(ops)}, d};
}

Vector apply(const OperatorSpec& op, const Vector& x) {
    require_dim(x, op.dim(), "operator argument");
    return std::visit(
        [&](const auto& v) -> Vector {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, AlternatingProjections>) {
                return project_one(v.A, project_one(v.B, x));
            } else if constexpr (std::is_same_v<T, DouglasRachford>) {
                const Vector rb = 2.0 * project_one(v.B, x) - x;
                const Vector rarb = 2.0 * project_one(v.A, rb) - rb;
                return 0.5 * (x + rarb);
            } else if constexpr (std::is_same_v<T, Relaxation>) {
                return (1.0 - v.alpha) * x + v.alpha * apply(*v.inner, x);
            } else {
                Vector y = x;
                for (auto it = v.ops.rbegin(); it != v.ops.rend(); ++it) y = apply(*it, y);
                return y;
            }
        },
        op.variant());
}

Points apply_all(const OperatorSpec& op, const Vector& x) {
    require_dim(x, op.dim(), "operator argument");
    return std::visit(
        [&](const auto& v) -> Points {
            using T = std::decay_t<decltype(v)>;
            Points out;
            if constexpr (std::is_same_v<T, AlternatingProjections>) {
                for (const auto& b : project_all(v.B, x).points)
                    for (auto& a : project_all(v.A, b).points) out.push_back(std::move(a));
            } else if constexpr (std::is_same_v<T, DouglasRachford>) {
                for (const auto& rb : reflect_all(v.B, x))
                    for (const auto& r : reflect_all(v.A, rb)) out.push_back(0.5 * (x + r));
            } else if constexpr (std::is_same_v<T, Relaxation>) {
                for (const auto& y : apply_all(*v.inner, x)) out.push_back((1.0 - v.alpha) * x + v.alpha * y);
            } else {
                Points cur{x};
                for (auto it = v.ops.rbegin(); it != v.ops.rend(); ++it) {
                    Points next;
                    for (const auto& y : cur)
                        for (auto& w : apply_all(*it, y)) next.push_back(std::move(w));
                    cur = unique_capped(std::move(next));
                }
                out = std::move(cur);
            }
            return unique_capped(std::move(out));
        },
        op.variant());
}

double residual_map(const OperatorSpec& op, const Vector& x) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& y : apply_all(op, x)) best = std::min(best, (y - x).norm());
    return best;
}

std::string_view to_string(StopReason r) {
    return r == StopReason::FixedPoint ? "fixed_point" : "max_iter";
}

Trace run(const OperatorSpec& op, const IterationConfig& cfg) {
    if (cfg.max_iter < 1) throw InvariantError("max_iter must be >= 1");
    if (!(cfg.residual_tol > 0.0)) throw InvariantError("residual_tol must be > 0");
    require_finite(cfg.start, "iteration start");
    require_dim(cfg.start, op.dim(), "iteration start");

    const auto* ap = op.as_ap();
    Trace t;
    t.seed = cfg.start;
    Vector x = cfg.lambda.project(cfg.start);
    if (ap) x = project_one(ap->A, x);

    for (int k = 0;; ++k) {
        t.x.push_back(x);
        t.dist_target.push_back(cfg.target ? distance(*cfg.target, x) : kNaN);
        Vector next;
        if (ap) {
            Vector b = project_one(ap->B, x);
            t.dist_A.push_back(distance(ap->A, x));
            t.dist_B.push_back((x - b).norm());
            next = project_one(ap->A, b);
            if (cfg.record_joining) {
                t.z.push_back(x);
                t.z.push_back(b);
            }
            t.b.push_back(std::move(b));
        } else {
            t.dist_A.push_back(kNaN);
            t.dist_B.push_back(kNaN);
            next = apply(op, x);
        }
        const double res = (next - x).norm();
        t.residual.push_back(res);
        if (res <= cfg.residual_tol) {
            t.stop_reason = StopReason::FixedPoint;
            break;
        }
        if (k >= cfg.max_iter || !next.allFinite()) {
            t.stop_reason = StopReason::MaxIter;
            break;
        }
        x = std::move(next);
    }
    return t;
}

Trace trace_from_sequence(Points xs, const std::optional<Target>& target) {
    if (xs.empty()) throw DomainError("empty sequence");
    Trace t;
    t.seed = xs.front();
    for (std::size_t k = 0; k < xs.size(); ++k) {
        t.dist_A.push_back(kNaN);
        t.dist_B.push_back(kNaN);
        t.dist_target.push_back(target ? distance(*target, xs[k]) : kNaN);
        t.residual.push_back(k + 1 < xs.size() ? (xs[k + 1] - xs[k]).norm() : kNaN);
    }
    t.x = std::move(xs);
    return t;
}

FixSetApproximation approximate_fix_set(const OperatorSpec& op, const Region& region,
                                        std::size_t budget, const Lambda& lambda,
                                        std::uint64_t seed, int max_iter, double residual_tol,
                                        double cluster_tol) {
    if (budget < 1) throw InvariantError("approximate_fix_set: budget must be >= 1");
    Points starts{lambda.project(region.center)};
    for (auto& p : sample_region(region, lambda, budget - 1, seed)) starts.push_back(std::move(p));

    FixSetApproximation out;
    out.starts = starts.size();
    Points limits;
    for (const auto& s : starts) {
        IterationConfig cfg;
        cfg.max_iter = max_iter;
        cfg.residual_tol = residual_tol;
        cfg.start = s;
        cfg.lambda = lambda;
        cfg.record_joining = false;
        const Trace t = run(op, cfg);
        if (t.stop_reason != StopReason::FixedPoint) continue;
        ++out.converged;
        limits.push_back(t.x.back());
    }
    out.points = sorted_unique(std::move(limits), cluster_tol);
    out.warning = out.converged == 0;
    return out;
}

} // namespace fixpoint
