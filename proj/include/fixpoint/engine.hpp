#pragma once

// Fixed-point operators assembled from projectors, and the iteration runner
// that records full traces (iterates, B-projections, joining sequence).

#include "fixpoint/geometry.hpp"

#include <cstdint>
#include <memory>
#include <optional>

namespace fixpoint {

class OperatorSpec;

/// T = P_A ∘ P_B
struct AlternatingProjections {
    SetSpec A;
    SetSpec B;
};

/// T = (Id + R_A R_B) / 2 with R_C = 2 P_C - Id
struct DouglasRachford {
    SetSpec A;
    SetSpec B;
};

/// T = (1 - alpha) Id + alpha * inner
struct Relaxation {
    std::shared_ptr<const OperatorSpec> inner;
    double alpha = 0.5;
};

/// T = ops[0] ∘ ops[1] ∘ ... ; the last operator is applied first.
struct Composition {
    std::vector<OperatorSpec> ops;
};

class OperatorSpec {
public:
    using Variant = std::variant<AlternatingProjections, DouglasRachford, Relaxation, Composition>;

    static OperatorSpec ap(SetSpec A, SetSpec B);
    static OperatorSpec dr(SetSpec A, SetSpec B);
    static OperatorSpec relax(OperatorSpec inner, double alpha);
    static OperatorSpec compose(std::vector<OperatorSpec> ops);

    const Variant& variant() const { return v_; }
    Eigen::Index dim() const { return dim_; }

    /// The (A, B) pair when this is plain alternating projections.
    const AlternatingProjections* as_ap() const { return std::get_if<AlternatingProjections>(&v_); }

private:
    OperatorSpec(Variant v, Eigen::Index dim) : v_(std::move(v)), dim_(dim) {}
    Variant v_;
    Eigen::Index dim_;
};

/// Deterministic evaluation: project_one at every stage.
Vector apply(const OperatorSpec& op, const Vector& x);

/// Every value of Tx reachable through the projectors' tie sets, sorted
/// lexicographically and deduplicated.
Points apply_all(const OperatorSpec& op, const Vector& x);

/// dist(0, (T - Id)(x)) = min over apply_all of |x+ - x|.
double residual_map(const OperatorSpec& op, const Vector& x);

struct IterationConfig {
    int max_iter = 100000;
    double residual_tol = 1e-12;
    Vector start;
    Lambda lambda;
    bool record_joining = true;
    std::optional<Target> target; // reference set for dist_target
};

enum class StopReason { FixedPoint, MaxIter };

std::string_view to_string(StopReason r);

struct Trace {
    Vector seed;               // the start before pre-projection
    Points x;                  // x_0 .. x_K
    Points b;                  // b_k = P_B x_k (AP only, else empty)
    Points z;                  // joining sequence x_0, b_0, x_1, b_1, ...
    std::vector<double> dist_A, dist_B, dist_target; // NaN when undefined
    std::vector<double> residual; // |x_{k+1} - x_k| under the selection
    StopReason stop_reason = StopReason::MaxIter;

    std::size_t size() const { return x.size(); }
};

/// Iterates x_{k+1} = T x_k from the start projected onto Λ (and then onto A
/// for alternating projections) until the residual drops to residual_tol or
/// max_iter steps have been taken.
Trace run(const OperatorSpec& op, const IterationConfig& cfg);

/// A trace built from an explicit sequence (no operator); dist_A/dist_B are
/// NaN and dist_target is filled when a target is given.
Trace trace_from_sequence(Points xs, const std::optional<Target>& target = std::nullopt);

struct FixSetApproximation {
    Points points;      // deduplicated limits, lexicographically sorted
    std::size_t starts = 0;
    std::size_t converged = 0;
    bool warning = false; // no start converged
};

/// Multi-start approximation of Fix T: the region center and budget-1 seeded
/// samples of region ∩ Λ are iterated; limits with residual <= residual_tol
/// are clustered at cluster_tol.
FixSetApproximation approximate_fix_set(const OperatorSpec& op, const Region& region,
                                        std::size_t budget, const Lambda& lambda,
                                        std::uint64_t seed = 0, int max_iter = 10000,
                                        double residual_tol = 1e-12, double cluster_tol = 1e-6);

} // namespace fixpoint
