#pragma once

// Nearest-point candidates on planar curve pieces. Internal to geometry.cpp.

#include "fixpoint/types.hpp"

#include <vector>

namespace fixpoint::detail {

struct Candidate {
    Vector point;
    double dist = 0.0;
};

/// Nearest point of the closed segment [from, to] to x.
void segment_candidates(const Vector& from, const Vector& to, const Vector& x,
                        std::vector<Candidate>& out);

/// All stationary points of |(t, q(t)) - x|^2 with q(t) = a t^2 + b t + c on
/// [t0, t1], plus its finite endpoints. t0 = -inf or t1 = +inf are allowed.
void quadratic_candidates(double a, double b, double c, double t0, double t1, const Vector& x,
                          std::vector<Candidate>& out);

/// Real roots in [lo, hi] of c0 + c1 t + c2 t^2 + c3 t^3, found by splitting at
/// the critical points and running safeguarded Newton on each monotone piece.
std::vector<double> cubic_roots_in(double c0, double c1, double c2, double c3, double lo,
                                   double hi);

} // namespace fixpoint::detail
