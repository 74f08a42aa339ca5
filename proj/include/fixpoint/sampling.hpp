#pragma once

// Seeded samples of balls, of sets inside a ball, and the certificate that
// makes a sampled estimate replayable. Sampling is sequential from one
// mt19937_64 stream, so a run with 2K samples extends the run with K.

#include "fixpoint/geometry.hpp"

#include <cstdint>

namespace fixpoint {

struct SampleCertificate {
    std::uint64_t seed = 0;
    std::size_t count = 0;     // accepted samples
    double grid_spacing = 0.0; // typical spacing, radius * count^(-1/dim)
};

/// Uniform samples of B_radius(center) ∩ Λ.
Points sample_region(const Region& region, const Lambda& lambda, std::size_t count,
                     std::uint64_t seed);

/// Points of s ∩ B_radius(center) ∩ Λ obtained by projecting uniform ambient
/// samples of the region onto s. Returns fewer than `count` points when the
/// draw budget (200 draws per requested point) runs out.
Points sample_on_set(const SetSpec& s, const Region& region, const Lambda& lambda,
                     std::size_t count, std::uint64_t seed);

SampleCertificate certify(std::uint64_t seed, const Points& sample, const Region& region);

} // namespace fixpoint
