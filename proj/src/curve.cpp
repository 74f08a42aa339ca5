#include "curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fixpoint::detail {

namespace {

double horner(double c0, double c1, double c2, double c3, double t) {
    return ((c3 * t + c2) * t + c1) * t + c0;
}

// Root of a function monotone on [lo, hi] with f(lo), f(hi) of opposite sign.
double safeguarded_newton(double c0, double c1, double c2, double c3, double lo, double hi) {
    double flo = horner(c0, c1, c2, c3, lo);
    double t = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double f = horner(c0, c1, c2, c3, t);
        if (f == 0.0) return t;
        if ((f < 0) == (flo < 0)) {
            lo = t;
            flo = f;
        } else {
            hi = t;
        }
        const double df = (3.0 * c3 * t + 2.0 * c2) * t + c1;
        double next = df != 0.0 ? t - f / df : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
        if (std::abs(next - t) <= 1e-16 * scale || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * scale)
            return next;
        t = next;
    }
    return t;
}

} // namespace

std::vector<double> cubic_roots_in(double c0, double c1, double c2, double c3, double lo,
                                   double hi) {
    std::vector<double> roots;
    if (c3 == 0.0 && c2 == 0.0) {
        if (c1 != 0.0) {
            const double t = -c0 / c1;
            if (t >= lo && t <= hi) roots.push_back(t);
        }
        return roots;
    }
    // Cauchy bound keeps the search finite on unbounded pieces.
    const double lead = c3 != 0.0 ? c3 : c2;
    const double bound =
        1.0 + std::max({std::abs(c0), std::abs(c1), std::abs(c3 != 0.0 ? c2 : 0.0)}) / std::abs(lead);
    lo = std::max(lo, -bound);
    hi = std::min(hi, bound);
    if (lo > hi) return roots;

    std::vector<double> cuts{lo};
    // critical points: 3 c3 t^2 + 2 c2 t + c1 = 0
    const double qa = 3.0 * c3, qb = 2.0 * c2, qc = c1;
    if (qa != 0.0) {
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc > 0.0) {
            const double s = std::sqrt(disc);
            const double q = -0.5 * (qb + std::copysign(s, qb));
            for (double r : {q / qa, q != 0.0 ? qc / q : 0.0})
                if (r > lo && r < hi) cuts.push_back(r);
        }
    } else if (qb != 0.0) {
        const double r = -qc / qb;
        if (r > lo && r < hi) cuts.push_back(r);
    }
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());

    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double l = cuts[i], r = cuts[i + 1];
        const double fl = horner(c0, c1, c2, c3, l), fr = horner(c0, c1, c2, c3, r);
        if (fl == 0.0) roots.push_back(l);
        if ((fl < 0 && fr > 0) || (fl > 0 && fr < 0)) roots.push_back(safeguarded_newton(c0, c1, c2, c3, l, r));
        if (i + 2 == cuts.size() && fr == 0.0) roots.push_back(r);
    }
    return roots;
}

void segment_candidates(const Vector& from, const Vector& to, const Vector& x,
                        std::vector<Candidate>& out) {
    const Vector d = to - from;
    const double len2 = d.squaredNorm();
    Vector p;
    if (len2 == 0.0) {
        p = from;
    } else {
        const double t = (x - from).dot(d) / len2;
        if (t <= 0.0)
            p = from;
        else if (t >= 1.0)
            p = to;
        else
            p = from + t * d;
    }
    const double dist = (x - p).norm();
    out.push_back({std::move(p), dist});
}

void quadratic_candidates(double a, double b, double c, double t0, double t1, const Vector& x,
                          std::vector<Candidate>& out) {
    const double px = x[0], py = x[1];
    const double e = c - py;
    // d/dt of half the squared distance:
    //   2a^2 t^3 + 3ab t^2 + (b^2 + 2ae + 1) t + (be - px)
    std::vector<double> ts = cubic_roots_in(b * e - px, b * b + 2.0 * a * e + 1.0, 3.0 * a * b,
                                            2.0 * a * a, t0, t1);
    if (std::isfinite(t0)) ts.push_back(t0);
    if (std::isfinite(t1)) ts.push_back(t1);
    for (double t : ts) {
        Vector p(2);
        p << t, (a * t + b) * t + c;
        const double dist = (x - p).norm();
        out.push_back({std::move(p), dist});
    }
}

} // namespace fixpoint::detail
