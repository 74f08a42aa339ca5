#pragma once

// Sequence-level classification of finished traces: Fejér and linear
// monotonicity, Q- and R-linear rates, linear extendibility, monotone
// subsequences and the convex alternating-projections dichotomy.
//
// Every constant reported here is a supremum over the recorded indices only.

#include "fixpoint/engine.hpp"

#include <optional>

namespace fixpoint {

/// Errors ‖x_k − x̃‖ at or below this are excluded from rate statistics.
inline constexpr double kRateFloor = 1e-11;

struct FejerReport {
    bool fejer = true;
    std::optional<std::size_t> index; // first k with ‖x_{k+1}−w‖ > ‖x_k−w‖ + tol
    std::optional<Vector> witness;
};

FejerReport check_fejer(const Trace& trace, const Points& omega_probe, double tol = 1e-9);

struct MonotonicityReport {
    double linear_c = 0.0;
    bool monotone = true;   // linear_c <= 1
    bool degenerate = false; // every distance below the ratio floor
    bool exact_omega = true; // false when Ω is a probe
    std::size_t probe_size = 0;
    std::optional<std::size_t> argmax; // k attaining linear_c
};

/// linear_c = max_k dist(x_{k+1},Ω)/dist(x_k,Ω), skipping denominators below 1e-12.
MonotonicityReport check_linear_monotone(const Trace& trace, const Target& omega);

enum class RateKind { Q, R };

struct RateEstimate {
    RateKind kind = RateKind::Q;
    double c = 0.0;
    double gamma = 0.0; // R only
    Vector limit;
    std::size_t valid_from = 0;
    std::size_t window_end = 0; // one past the last index above the floor
};

/// Errors ‖x_k − limit‖ along the trace.
std::vector<double> errors_to(const Points& xs, const Vector& limit);

/// Last iterate of a trace that stopped at a fixed point; DomainError otherwise.
Vector trace_limit(const Trace& trace);

/// c = max consecutive error ratio over the indices whose error exceeds `floor`.
RateEstimate estimate_q_rate(const Points& xs, const Vector& limit, double floor = kRateFloor);
RateEstimate estimate_q_rate(const Trace& trace, const std::optional<Vector>& limit = std::nullopt);

/// c = exp(slope) of a least-squares line through the upper concave hull of
/// (k, log e_k) over the pre-floor window; gamma = max_k e_k / c^k over that
/// window. Fitting the hull instead of every point keeps an oscillating but
/// R-linear error envelope from biasing the slope.
RateEstimate estimate_r_rate(const Points& xs, const Vector& limit, double floor = kRateFloor);
RateEstimate estimate_r_rate(const Trace& trace, const std::optional<Vector>& limit = std::nullopt);

/// First k with errors[k] > gamma c^k + tol, if any.
std::optional<std::size_t> r_certificate_failure(const std::vector<double>& errors, double c,
                                                 double gamma, double tol = 1e-9);

/// gamma extending an eventual bound e_k <= gamma' c^(k-p) (k >= p) to all k.
double extend_r_certificate(const std::vector<double>& errors, std::size_t p, double gamma_prime,
                            double c);

struct ExtendibilityReport {
    int m = 1;
    double c = 0.0;
    bool holds = false;
    std::optional<std::size_t> failing_index;
    double d0 = 0.0;
    double gamma = 0.0; // m d0 / (1 - c) when c < 1
};

/// Checks ‖z_{k+2}−z_{k+1}‖ <= ‖z_{k+1}−z_k‖ and the frequency-m contraction
/// on the given joining sequence.
ExtendibilityReport check_linear_extendible(const Points& z, int m, double tol = 1e-9);

struct SubsequenceReport {
    std::vector<std::size_t> indices;
    std::optional<std::size_t> k1;
    bool degenerate = false; // x_0 already in S
};

/// Greedy extraction: from k_n take the first k > k_n with
/// gamma c^k <= c dist(x_{k_n}, S). Throws DomainError when the
/// R-certificate (gamma, c) fails against `limit`.
SubsequenceReport extract_monotone_subsequence(const Trace& trace, const Target& S, double c,
                                               double gamma, const Vector& limit);

/// Offsets j in {0,…,n−1} for which x_{j+nk} is linearly monotone w.r.t. S with
/// constant c (tol 1e-9).
std::vector<std::size_t> monotone_strides(const Trace& trace, const Target& S, std::size_t n,
                                          double c);

enum class Dichotomy { SolvedInOne, NeverReaches, StartsSolved };

std::string_view to_string(Dichotomy d);

struct DichotomyReport {
    Dichotomy kind = Dichotomy::NeverReaches;
    double c = 0.0; // (‖x₁−P_B x₀‖ / ‖P_B x₀−x₀‖)²
    bool bound_holds = true;
    std::optional<std::size_t> failing_index;
};

/// For a convex AP trace: solved after one step, never solved (with the lower
/// bound dist(x_k,B) >= c^k dist(x₀,B) checked), or started in A ∩ B.
DichotomyReport check_convex_dichotomy(const Trace& trace, double solved_tol = 1e-12,
                                       double tol = 1e-9);

} // namespace fixpoint
