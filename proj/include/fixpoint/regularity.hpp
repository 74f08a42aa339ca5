#pragma once

// Sampled estimates of the regularity constants (metric subregularity κ,
// subtransversality sr and sr′, σ, the almost-averaged violation ε and
// averaging constant α, elemental subregularity) and the closed-form rate
// and necessity bounds they feed.
//
// Every estimate is a supremum over a seeded sample and therefore a lower
// bound on the true constant. Ratio conventions shared by all estimators:
// 0/0 contributes 0, and a positive numerator over a vanishing denominator
// makes the estimate +inf.

#include "fixpoint/engine.hpp"
#include "fixpoint/sampling.hpp"

#include <optional>

namespace fixpoint {

enum class ConstantKind { KappaMsr, Sr, SrPrime, Sigma, ViolationEps, AveragingAlpha, ElementalEps };

std::string_view to_string(ConstantKind k);

/// Where the estimator draws its samples: B_radius(center) ∩ Λ, optionally
/// restricted to a set (by projection) and with a ball cut out.
struct SampleDomain {
    Region region;
    Lambda lambda;
    std::optional<SetSpec> on;
    std::optional<Region> exclude;
    std::size_t samples = 20000;
    std::uint64_t seed = 0;
};

/// Draws the domain's sample. Nested: doubling `samples` extends the sample.
Points draw(const SampleDomain& d);

struct RegularityEstimate {
    ConstantKind kind = ConstantKind::KappaMsr;
    double value = 0.0; // may be +inf
    Vector base_point;
    double delta = 0.0;
    Lambda lambda;
    SampleCertificate certificate;
    bool degenerate = false;     // no sample contributed a nonzero ratio
    std::optional<Vector> argmax; // sample attaining value
};

/// κ̂ = sup dist(x, fix) / dist(0, (T−Id)x) over the sample. Samples with
/// residual < 1e-12 are skipped unless they sit farther than 1e-9 from fix,
/// which yields +inf.
RegularityEstimate estimate_kappa(const OperatorSpec& op, const Target& fix,
                                  const SampleDomain& domain);

/// sup over x ∈ A ∩ B_δ(x̄) ∩ Λ of dist(x, A∩B)/dist(x, B).
RegularityEstimate estimate_sr_prime(const SetSpec& A, const SetSpec& B, const Target& intersection,
                                     const Vector& base_point, double delta, const Lambda& lambda,
                                     std::size_t samples = 20000, std::uint64_t seed = 0);

/// sup over x ∈ B_δ(x̄) ∩ Λ of dist(x, A∩B)/max(dist(x, A), dist(x, B)).
RegularityEstimate estimate_sr(const SetSpec& A, const SetSpec& B, const Target& intersection,
                               const Vector& base_point, double delta, const Lambda& lambda,
                               std::size_t samples = 20000, std::uint64_t seed = 0);

/// sup over x ∈ B_δ(x̄) of sqrt(dist(x,A)² + dist(x,B)²) / dist(0, (T_AP−Id)x).
RegularityEstimate estimate_sigma(const SetSpec& A, const SetSpec& B, const Vector& base_point,
                                  double delta, std::size_t samples = 20000, std::uint64_t seed = 0);

/// ε̂ = max(0, sup [‖x⁺−y‖² + ((1−α)/α)‖x−x⁺‖²]/‖x−y‖² − 1) over samples and
/// every candidate x⁺ ∈ Tx. y must be a fixed point.
RegularityEstimate estimate_violation(const OperatorSpec& op, const Vector& y, double alpha,
                                      const SampleDomain& domain);

/// Smallest α making the averaged inequality hold with ε = 0 on the sample:
/// sup of 1/(1+q), q = (‖x−y‖² − ‖x⁺−y‖²)/‖x−x⁺‖²; 1 when some q <= 0.
RegularityEstimate estimate_averaging(const OperatorSpec& op, const Vector& y,
                                      const SampleDomain& domain);

/// Elemental subregularity of s at the pair over the domain's sample of s.
RegularityEstimate estimate_elemental(const SetSpec& s, const NormalPair& pair,
                                      const SampleDomain& domain);

/// c = sqrt(1 + ε − (1−α)/(κ²α)); nullopt when c >= 1. DomainError on a
/// negative radicand or inputs outside α ∈ (0,1), κ > 0, ε >= 0.
std::optional<double> predicted_rate_msr(double eps, double alpha, double kappa);

struct CpRate {
    std::optional<double> c; // nullopt when condition (e) fails
    bool collapsed = false;  // radicand < 0: reported as c = 0
    double radicand = 0.0;
};

/// ε̃ = 4ε(1+ε)/(1−ε)²; c = sqrt(1 + ε̃_A + ε̃_B + ε̃_Aε̃_B − 1/(2(κσ)²)).
double eps_tilde(double eps);
CpRate predicted_rate_cp(double eps_a, double eps_b, double kappa, double sigma);

enum class NecessityKind { Msr, Nec1Plus, Nec2, Nec1PlusPart2 };

/// (Msr) 1/(1−c); (Nec1Plus) 2(2n²−1−c(n−1))/(1−c); (Nec2) 2m/(1−c);
/// (Nec1PlusPart2) 2(2n−1−c(n−1))/(1−c). `n` is n or m as appropriate.
double necessity_bound(NecessityKind kind, double c, int n = 1);

/// sr′ <= sr + tol and sr <= 1 + 2 sr′ + tol. Throws InvariantError when the
/// two estimates are not on the same (x̄, δ, Λ).
bool verify_bracket(const RegularityEstimate& sr, const RegularityEstimate& sr_prime,
                    double tol = 1e-2);

struct GlobalSubtransversality {
    bool holds = true;
    double max_ratio = 0.0; // sup dist(x, A∩B)/dist(x, B) over the sample
    std::optional<Vector> witness;
    std::size_t count = 0;
};

/// dist(x, A∩B) <= dist(x, B)/(1−c) on samples of A ∩ region.
GlobalSubtransversality check_global_subtransversality(const SetSpec& A, const SetSpec& B,
                                                       const Target& intersection,
                                                       const Region& region, double c,
                                                       std::size_t samples = 20000,
                                                       std::uint64_t seed = 0);

} // namespace fixpoint
