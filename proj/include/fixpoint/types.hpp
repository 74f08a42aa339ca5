#pragma once

// Shared vocabulary for the fixpoint library: dense points, error types and
// the default numerical tolerances used across modules.

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fixpoint {

/// A point of E = R^d with the Euclidean norm.
using Vector = Eigen::VectorXd;

using Points = std::vector<Vector>;

/// Thrown when two objects of different ambient dimension meet.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a constructor argument violates a type invariant.
class InvariantError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an operation's precondition does not hold for its input.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct Tolerances {
    double tie = 1e-9;        // distances closer than this are ties
    double membership = 1e-9; // dist(x, S) <= membership  =>  x in S
    double identical = 1e-9;  // candidate points closer than this coincide
};

inline constexpr Tolerances default_tolerances{};

/// Ratios whose denominator falls below this are treated as 0/0.
inline constexpr double kRatioFloor = 1e-12;

Vector make_vector(std::initializer_list<double> coords);
Vector make_vector(const std::vector<double>& coords);
std::vector<double> to_std(const Vector& v);

bool all_finite(const Vector& v);

/// Throws InvariantError unless every coordinate is finite.
void require_finite(const Vector& v, const char* what);

void require_dim(const Vector& v, Eigen::Index dim, const char* what);

/// Strict lexicographic order on coordinates; shorter vectors first.
bool lex_less(const Vector& a, const Vector& b);

/// Sorts lexicographically and drops points within `identical` of a kept one.
Points sorted_unique(Points points, double identical);

/// 2-norm of the pair (||a||, ||b||); the product-space norm on E x E.
double pair_norm(const Vector& a, const Vector& b);

std::string to_string(const Vector& v);

} // namespace fixpoint
