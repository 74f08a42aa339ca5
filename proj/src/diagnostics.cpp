#include "fixpoint/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fixpoint {

FejerReport check_fejer(const Trace& trace, const Points& omega_probe, double tol) {
    if (omega_probe.empty()) throw DomainError("check_fejer: empty probe");
    FejerReport r;
    for (std::size_t k = 0; k + 1 < trace.x.size(); ++k) {
        for (const auto& w : omega_probe) {
            if ((trace.x[k + 1] - w).norm() > (trace.x[k] - w).norm() + tol) {
                r.fejer = false;
                r.index = k;
                r.witness = w;
                return r;
            }
        }
    }
    return r;
}

MonotonicityReport check_linear_monotone(const Trace& trace, const Target& omega) {
    if (trace.x.size() < 2) throw DomainError("check_linear_monotone: trace shorter than 2");
    MonotonicityReport r;
    if (const auto* p = std::get_if<Probe>(&omega.variant())) {
        r.exact_omega = false;
        r.probe_size = p->points.size();
    }
    std::vector<double> d;
    d.reserve(trace.x.size());
    for (const auto& x : trace.x) d.push_back(distance(omega, x));
    r.degenerate = std::all_of(d.begin(), d.end(), [](double v) { return v < kRatioFloor; });
    for (std::size_t k = 0; k + 1 < d.size(); ++k) {
        if (d[k] < kRatioFloor) continue;
        const double ratio = d[k + 1] / d[k];
        if (!r.argmax || ratio > r.linear_c) {
            r.linear_c = ratio;
            r.argmax = k;
        }
    }
    r.monotone = r.linear_c <= 1.0;
    return r;
}

std::vector<double> errors_to(const Points& xs, const Vector& limit) {
    std::vector<double> e;
    e.reserve(xs.size());
    for (const auto& x : xs) e.push_back((x - limit).norm());
    return e;
}

Vector trace_limit(const Trace& trace) {
    if (trace.stop_reason != StopReason::FixedPoint)
        throw DomainError("trace did not stop at a fixed point; supply the limit");
    return trace.x.back();
}

namespace {

// Leading indices whose error exceeds the floor.
std::size_t window_end(const std::vector<double>& e, double floor) {
    std::size_t n = 0;
    while (n < e.size() && e[n] > floor) ++n;
    return n;
}

} // namespace

RateEstimate estimate_q_rate(const Points& xs, const Vector& limit, double floor) {
    if (xs.size() < 2) throw DomainError("estimate_q_rate: trace too short");
    const auto e = errors_to(xs, limit);
    const std::size_t end = window_end(e, floor);
    if (end == 0) throw DomainError("estimate_q_rate: no error above the floor");
    RateEstimate r;
    r.kind = RateKind::Q;
    r.limit = limit;
    r.window_end = end;
    // ratios e_{k+1}/e_k for k in the window, including the step into the floor
    for (std::size_t k = 0; k < end && k + 1 < e.size(); ++k) r.c = std::max(r.c, e[k + 1] / e[k]);
    return r;
}

RateEstimate estimate_q_rate(const Trace& trace, const std::optional<Vector>& limit) {
    return estimate_q_rate(trace.x, limit ? *limit : trace_limit(trace));
}

RateEstimate estimate_r_rate(const Points& xs, const Vector& limit, double floor) {
    const auto e = errors_to(xs, limit);
    const std::size_t end = window_end(e, floor);
    if (end < 3) throw DomainError("estimate_r_rate: fewer than 3 usable points");

    // upper concave hull of (k, log e_k), monotone chain
    std::vector<std::size_t> hull;
    auto le = [&](std::size_t k) { return std::log(e[k]); };
    for (std::size_t k = 0; k < end; ++k) {
        while (hull.size() >= 2) {
            const std::size_t i = hull[hull.size() - 2], j = hull.back();
            const double cross = (static_cast<double>(j) - static_cast<double>(i)) * (le(k) - le(i)) -
                                 (le(j) - le(i)) * (static_cast<double>(k) - static_cast<double>(i));
            if (cross >= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(k);
    }
    double mk = 0.0, my = 0.0;
    for (auto k : hull) {
        mk += static_cast<double>(k);
        my += le(k);
    }
    mk /= static_cast<double>(hull.size());
    my /= static_cast<double>(hull.size());
    double sxy = 0.0, sxx = 0.0;
    for (auto k : hull) {
        const double dk = static_cast<double>(k) - mk;
        sxy += dk * (le(k) - my);
        sxx += dk * dk;
    }
    RateEstimate r;
    r.kind = RateKind::R;
    r.limit = limit;
    r.window_end = end;
    r.c = std::exp(sxy / sxx);
    for (std::size_t k = 0; k < end; ++k)
        r.gamma = std::max(r.gamma, e[k] / std::pow(r.c, static_cast<double>(k)));
    return r;
}

RateEstimate estimate_r_rate(const Trace& trace, const std::optional<Vector>& limit) {
    return estimate_r_rate(trace.x, limit ? *limit : trace_limit(trace));
}

std::optional<std::size_t> r_certificate_failure(const std::vector<double>& errors, double c,
                                                 double gamma, double tol) {
    for (std::size_t k = 0; k < errors.size(); ++k)
        if (errors[k] > gamma * std::pow(c, static_cast<double>(k)) + tol) return k;
    return std::nullopt;
}

double extend_r_certificate(const std::vector<double>& errors, std::size_t p, double gamma_prime,
                            double c) {
    if (!(c > 0.0 && c < 1.0)) throw DomainError("extend_r_certificate: c must lie in (0,1)");
    double gamma = gamma_prime / std::pow(c, static_cast<double>(p));
    for (std::size_t k = 0; k <= p && k < errors.size(); ++k)
        gamma = std::max(gamma, errors[k] / std::pow(c, static_cast<double>(k)));
    return gamma;
}

ExtendibilityReport check_linear_extendible(const Points& z, int m, double tol) {
    if (m < 1) throw DomainError("check_linear_extendible: m must be >= 1");
    if (z.size() < static_cast<std::size_t>(m) + 2)
        throw DomainError("check_linear_extendible: joining sequence too short");
    std::vector<double> s;
    for (std::size_t k = 0; k + 1 < z.size(); ++k) s.push_back((z[k + 1] - z[k]).norm());

    ExtendibilityReport r;
    r.m = m;
    r.d0 = s.front();
    r.holds = true;
    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
        if (s[k + 1] > s[k] + tol) {
            r.holds = false;
            r.failing_index = k;
            break;
        }
    }
    const std::size_t um = static_cast<std::size_t>(m);
    std::optional<std::size_t> worst;
    for (std::size_t k = 0; um * (k + 1) < s.size(); ++k) {
        const double den = s[um * k], num = s[um * (k + 1)];
        double ratio;
        if (den >= kRatioFloor)
            ratio = num / den;
        else
            ratio = num < kRatioFloor ? 0.0 : std::numeric_limits<double>::infinity();
        if (ratio > r.c) {
            r.c = ratio;
            worst = k;
        }
    }
    if (r.c >= 1.0) {
        if (r.holds) r.failing_index = worst;
        r.holds = false;
    } else {
        r.gamma = static_cast<double>(m) * r.d0 / (1.0 - r.c);
    }
    return r;
}

SubsequenceReport extract_monotone_subsequence(const Trace& trace, const Target& S, double c,
                                               double gamma, const Vector& limit) {
    const auto e = errors_to(trace.x, limit);
    if (r_certificate_failure(e, c, gamma)) throw DomainError("extract_monotone_subsequence: R-certificate fails");
    SubsequenceReport r;
    r.indices.push_back(0);
    double d = distance(S, trace.x.front());
    if (d <= kRatioFloor) {
        r.degenerate = true;
        return r;
    }
    for (std::size_t k = 1; k < trace.x.size(); ++k) {
        if (gamma * std::pow(c, static_cast<double>(k)) > c * d + 1e-12) continue;
        r.indices.push_back(k);
        if (!r.k1) r.k1 = k;
        d = distance(S, trace.x[k]);
        if (d <= kRatioFloor) break;
    }
    return r;
}

std::vector<std::size_t> monotone_strides(const Trace& trace, const Target& S, std::size_t n,
                                          double c) {
    if (n < 1) throw DomainError("monotone_strides: n must be >= 1");
    std::vector<double> d;
    for (const auto& x : trace.x) d.push_back(distance(S, x));
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < n; ++j) {
        bool ok = true;
        for (std::size_t k = j; k + n < d.size() && ok; k += n) ok = d[k + n] <= c * d[k] + 1e-9;
        if (ok) out.push_back(j);
    }
    return out;
}

std::string_view to_string(Dichotomy d) {
    switch (d) {
    case Dichotomy::SolvedInOne: return "solved_in_one";
    case Dichotomy::NeverReaches: return "never_reaches";
    case Dichotomy::StartsSolved: return "starts_solved";
    }
    return "";
}

DichotomyReport check_convex_dichotomy(const Trace& trace, double solved_tol, double tol) {
    if (trace.b.empty()) throw DomainError("check_convex_dichotomy: not an alternating projections trace");
    DichotomyReport r;
    if (trace.dist_B.front() <= solved_tol) {
        r.kind = Dichotomy::StartsSolved;
        return r;
    }
    if (trace.x.size() < 2) throw DomainError("check_convex_dichotomy: trace shorter than 2");
    if (trace.dist_B[1] <= solved_tol) {
        r.kind = Dichotomy::SolvedInOne;
        return r;
    }
    r.kind = Dichotomy::NeverReaches;
    const double sqrt_c = (trace.x[1] - trace.b[0]).norm() / (trace.b[0] - trace.x[0]).norm();
    r.c = sqrt_c * sqrt_c;
    for (std::size_t k = 0; k < trace.dist_B.size(); ++k) {
        if (trace.dist_B[k] < std::pow(r.c, static_cast<double>(k)) * trace.dist_B.front() - tol) {
            r.bound_holds = false;
            r.failing_index = k;
            break;
        }
    }
    return r;
}

} // namespace fixpoint
