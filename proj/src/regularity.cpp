#include "fixpoint/regularity.hpp"

#include <cmath>
#include <limits>

namespace fixpoint {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kStuckTol = 1e-9;

// Running supremum of ratios under the shared 0/0 and x/0 conventions.
class SupRatio {
public:
    void add(double num, double den, const Vector& x, double zero_tol = kRatioFloor) {
        double r;
        if (den < kRatioFloor)
            r = num < zero_tol ? 0.0 : kInf;
        else
            r = num / den;
        if (r > 0.0) degenerate_ = false;
        if (!argmax_ || r > value_) {
            value_ = r;
            argmax_ = x;
        }
    }
    double value() const { return value_; }
    bool degenerate() const { return degenerate_; }
    const std::optional<Vector>& argmax() const { return argmax_; }

private:
    double value_ = 0.0;
    bool degenerate_ = true;
    std::optional<Vector> argmax_;
};

RegularityEstimate finish(ConstantKind kind, const SupRatio& s, const Vector& base, double delta,
                          const Lambda& lambda, const SampleCertificate& cert) {
    RegularityEstimate e;
    e.kind = kind;
    e.value = s.value();
    e.base_point = base;
    e.delta = delta;
    e.lambda = lambda;
    e.certificate = cert;
    e.degenerate = s.degenerate();
    e.argmax = s.argmax();
    return e;
}

} // namespace

std::string_view to_string(ConstantKind k) {
    switch (k) {
    case ConstantKind::KappaMsr: return "kappa_msr";
    case ConstantKind::Sr: return "sr";
    case ConstantKind::SrPrime: return "sr_prime";
    case ConstantKind::Sigma: return "sigma";
    case ConstantKind::ViolationEps: return "violation_eps";
    case ConstantKind::AveragingAlpha: return "averaging_alpha";
    case ConstantKind::ElementalEps: return "elemental_eps";
    }
    return "";
}

Points draw(const SampleDomain& d) {
    Points pts = d.on ? sample_on_set(*d.on, d.region, d.lambda, d.samples, d.seed)
                      : sample_region(d.region, d.lambda, d.samples, d.seed);
    if (d.exclude) std::erase_if(pts, [&](const Vector& x) { return d.exclude->contains(x); });
    return pts;
}

RegularityEstimate estimate_kappa(const OperatorSpec& op, const Target& fix,
                                  const SampleDomain& domain) {
    const Points pts = draw(domain);
    SupRatio s;
    for (const auto& x : pts) s.add(distance(fix, x), residual_map(op, x), x, kStuckTol);
    return finish(ConstantKind::KappaMsr, s, domain.region.center, domain.region.radius,
                  domain.lambda, certify(domain.seed, pts, domain.region));
}

RegularityEstimate estimate_sr_prime(const SetSpec& A, const SetSpec& B, const Target& intersection,
                                     const Vector& base_point, double delta, const Lambda& lambda,
                                     std::size_t samples, std::uint64_t seed) {
    if (!(delta > 0.0)) throw DomainError("estimate_sr_prime: delta must be > 0");
    const Region region{base_point, delta};
    const Points pts = sample_on_set(A, region, lambda, samples, seed);
    SupRatio s;
    for (const auto& x : pts) s.add(distance(intersection, x), distance(B, x), x, kStuckTol);
    return finish(ConstantKind::SrPrime, s, base_point, delta, lambda, certify(seed, pts, region));
}

RegularityEstimate estimate_sr(const SetSpec& A, const SetSpec& B, const Target& intersection,
                               const Vector& base_point, double delta, const Lambda& lambda,
                               std::size_t samples, std::uint64_t seed) {
    if (!(delta > 0.0)) throw DomainError("estimate_sr: delta must be > 0");
    const Region region{base_point, delta};
    const Points pts = sample_region(region, lambda, samples, seed);
    SupRatio s;
    for (const auto& x : pts)
        s.add(distance(intersection, x), std::max(distance(A, x), distance(B, x)), x, kStuckTol);
    return finish(ConstantKind::Sr, s, base_point, delta, lambda, certify(seed, pts, region));
}

RegularityEstimate estimate_sigma(const SetSpec& A, const SetSpec& B, const Vector& base_point,
                                  double delta, std::size_t samples, std::uint64_t seed) {
    if (!(delta > 0.0)) throw DomainError("estimate_sigma: delta must be > 0");
    const auto op = OperatorSpec::ap(A, B);
    const Region region{base_point, delta};
    const Points pts = sample_region(region, Lambda::whole(), samples, seed);
    SupRatio s;
    std::size_t used = 0;
    for (const auto& x : pts) {
        const double res = residual_map(op, x);
        if (res <= kRatioFloor) continue;
        ++used;
        s.add(std::hypot(distance(A, x), distance(B, x)), res, x);
    }
    if (used == 0) throw DomainError("estimate_sigma: no sample with positive residual");
    return finish(ConstantKind::Sigma, s, base_point, delta, Lambda::whole(),
                  certify(seed, pts, region));
}

RegularityEstimate estimate_violation(const OperatorSpec& op, const Vector& y, double alpha,
                                      const SampleDomain& domain) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("estimate_violation: alpha must lie in (0,1)");
    const Points pts = draw(domain);
    const double w = (1.0 - alpha) / alpha;
    double eps = 0.0;
    bool any = false;
    std::optional<Vector> argmax;
    for (const auto& x : pts) {
        const double dxy2 = (x - y).squaredNorm();
        if (std::sqrt(dxy2) <= kRatioFloor) continue;
        any = true;
        for (const auto& xp : apply_all(op, x)) {
            const double v = ((xp - y).squaredNorm() + w * (x - xp).squaredNorm()) / dxy2 - 1.0;
            if (v > eps) {
                eps = v;
                argmax = x;
            }
        }
    }
    if (!any) throw DomainError("estimate_violation: no sample away from y");
    RegularityEstimate e;
    e.kind = ConstantKind::ViolationEps;
    e.value = eps;
    e.base_point = y;
    e.delta = domain.region.radius;
    e.lambda = domain.lambda;
    e.certificate = certify(domain.seed, pts, domain.region);
    e.degenerate = eps == 0.0;
    e.argmax = argmax;
    return e;
}

RegularityEstimate estimate_averaging(const OperatorSpec& op, const Vector& y,
                                      const SampleDomain& domain) {
    const Points pts = draw(domain);
    double alpha = 0.0;
    std::optional<Vector> argmax;
    for (const auto& x : pts) {
        for (const auto& xp : apply_all(op, x)) {
            const double step2 = (x - xp).squaredNorm();
            if (std::sqrt(step2) <= kRatioFloor) continue;
            const double q = ((x - y).squaredNorm() - (xp - y).squaredNorm()) / step2;
            const double a = q > 0.0 ? 1.0 / (1.0 + q) : 1.0;
            if (a > alpha) {
                alpha = a;
                argmax = x;
            }
        }
    }
    RegularityEstimate e;
    e.kind = ConstantKind::AveragingAlpha;
    e.value = alpha;
    e.base_point = y;
    e.delta = domain.region.radius;
    e.lambda = domain.lambda;
    e.certificate = certify(domain.seed, pts, domain.region);
    e.degenerate = !argmax.has_value();
    e.argmax = argmax;
    return e;
}

RegularityEstimate estimate_elemental(const SetSpec& s, const NormalPair& pair,
                                      const SampleDomain& domain) {
    SampleDomain d = domain;
    d.on = s;
    const Points pts = draw(d);
    RegularityEstimate e;
    e.kind = ConstantKind::ElementalEps;
    e.value = elemental_subreg_estimate(pts, pair, domain.region);
    e.base_point = pair.base;
    e.delta = domain.region.radius;
    e.lambda = domain.lambda;
    e.certificate = certify(domain.seed, pts, domain.region);
    e.degenerate = e.value == 0.0;
    return e;
}

std::optional<double> predicted_rate_msr(double eps, double alpha, double kappa) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("predicted_rate_msr: alpha must lie in (0,1)");
    if (!(kappa > 0.0)) throw DomainError("predicted_rate_msr: kappa must be > 0");
    if (!(eps >= 0.0)) throw DomainError("predicted_rate_msr: eps must be >= 0");
    const double radicand = 1.0 + eps - (1.0 - alpha) / (kappa * kappa * alpha);
    if (radicand < 0.0) throw DomainError("predicted_rate_msr: negative radicand (inconsistent inputs)");
    const double c = std::sqrt(radicand);
    if (c >= 1.0) return std::nullopt;
    return c;
}

double eps_tilde(double eps) {
    if (!(eps >= 0.0 && eps < 1.0)) throw DomainError("eps must lie in [0,1)");
    return 4.0 * eps * (1.0 + eps) / ((1.0 - eps) * (1.0 - eps));
}

CpRate predicted_rate_cp(double eps_a, double eps_b, double kappa, double sigma) {
    const double ta = eps_tilde(eps_a), tb = eps_tilde(eps_b);
    const double ks = kappa * sigma;
    if (!(ks > 0.0)) throw DomainError("predicted_rate_cp: kappa * sigma must be > 0");
    const double inflation = ta + tb + ta * tb;
    const double gain = 1.0 / (2.0 * ks * ks);
    CpRate r;
    r.radicand = 1.0 + inflation - gain;
    if (!(inflation < gain)) return r;
    if (r.radicand < 0.0) {
        r.collapsed = true;
        r.c = 0.0;
    } else {
        r.c = std::sqrt(r.radicand);
    }
    return r;
}

double necessity_bound(NecessityKind kind, double c, int n) {
    if (!(c >= 0.0 && c < 1.0)) throw DomainError("necessity_bound: c must lie in [0,1)");
    if (n < 1) throw DomainError("necessity_bound: n must be >= 1");
    const double dn = n;
    switch (kind) {
    case NecessityKind::Msr: return 1.0 / (1.0 - c);
    case NecessityKind::Nec1Plus: return 2.0 * (2.0 * dn * dn - 1.0 - c * (dn - 1.0)) / (1.0 - c);
    case NecessityKind::Nec2: return 2.0 * dn / (1.0 - c);
    case NecessityKind::Nec1PlusPart2: return 2.0 * (2.0 * dn - 1.0 - c * (dn - 1.0)) / (1.0 - c);
    }
    return 0.0;
}

bool verify_bracket(const RegularityEstimate& sr, const RegularityEstimate& sr_prime, double tol) {
    if (sr.kind != ConstantKind::Sr || sr_prime.kind != ConstantKind::SrPrime)
        throw InvariantError("verify_bracket: expected an sr and an sr' estimate");
    if (sr.base_point != sr_prime.base_point || sr.delta != sr_prime.delta || !(sr.lambda == sr_prime.lambda))
        throw InvariantError("verify_bracket: estimates on different (base point, delta, lambda)");
    return sr_prime.value <= sr.value + tol && sr.value <= 1.0 + 2.0 * sr_prime.value + tol;
}

GlobalSubtransversality check_global_subtransversality(const SetSpec& A, const SetSpec& B,
                                                       const Target& intersection,
                                                       const Region& region, double c,
                                                       std::size_t samples, std::uint64_t seed) {
    if (!(c >= 0.0 && c < 1.0)) throw DomainError("check_global_subtransversality: c must lie in [0,1)");
    const Points pts = sample_on_set(A, region, Lambda::whole(), samples, seed);
    GlobalSubtransversality g;
    g.count = pts.size();
    SupRatio s;
    for (const auto& x : pts) {
        const double dab = distance(intersection, x), db = distance(B, x);
        s.add(dab, db, x, kStuckTol);
        if (g.holds && dab > db / (1.0 - c) + 1e-9) {
            g.holds = false;
            g.witness = x;
        }
    }
    g.max_ratio = s.value();
    return g;
}

} // namespace fixpoint
