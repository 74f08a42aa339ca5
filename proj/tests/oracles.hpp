#pragma once

// Reference computations written without the library's projectors: closed
// forms and brute-force sweeps. Tests compare library output against these.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <vector>

namespace oracle {

using Vec = Eigen::VectorXd;

inline Vec v2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

// Line through the origin at angle theta.
inline Vec project_line(double theta, const Vec& x) {
    const Vec u = v2(std::cos(theta), std::sin(theta));
    return u.dot(x) * u;
}

// Reflection across the line through the origin at angle theta, as a matrix.
inline Eigen::Matrix2d reflector(double theta) {
    Eigen::Matrix2d r;
    r << std::cos(2 * theta), std::sin(2 * theta), std::sin(2 * theta), -std::cos(2 * theta);
    return r;
}

// Douglas-Rachford on two lines through the origin: (I + R_A R_B)/2.
inline Vec dr_lines(double theta_a, double theta_b, const Vec& x) {
    const Eigen::Matrix2d t = 0.5 * (Eigen::Matrix2d::Identity() + reflector(theta_a) * reflector(theta_b));
    return t * x;
}

// The sawtooth function on (0, 1]: on [1/2^{n+1}, 1/2^n] it runs down from 0
// to -1/2^{n+2} at 3/2^{n+2} and back up to 0.
inline double sawtooth(double t) {
    if (t <= 0.0) return 0.0;
    const int n = static_cast<int>(std::floor(-std::log2(t)));
    const double lo = std::ldexp(1.0, -(n + 1)), hi = std::ldexp(1.0, -n), mid = 0.5 * (lo + hi);
    const double depth = std::ldexp(1.0, -(n + 2));
    return t <= mid ? -depth * (t - lo) / (mid - lo) : -depth * (hi - t) / (hi - mid);
}

// Distance to the graph of the sawtooth over [0, 1] by dense parameter sweep.
// Error is at most the chord length between samples.
inline double sawtooth_distance(const Vec& x, int n = 1000000) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / n;
        best = std::min(best, std::hypot(x[0] - t, x[1] - sawtooth(t)));
    }
    return best;
}

// Distance to the sphere |y - c| = r in R^2 by angular sweep.
inline double circle_distance(const Vec& c, double r, const Vec& x, int n = 200000) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double a = 2.0 * M_PI * i / n;
        best = std::min(best, (x - c - r * v2(std::cos(a), std::sin(a))).norm());
    }
    return best;
}

// Distance to the graph of f over a parameter range, by sweep.
template <class F>
double graph_distance(F f, double lo, double hi, const Vec& x, int n = 400000) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) {
        const double t = lo + (hi - lo) * i / n;
        best = std::min(best, std::hypot(x[0] - t, x[1] - f(t)));
    }
    return best;
}

} // namespace oracle
