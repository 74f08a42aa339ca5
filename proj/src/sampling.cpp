#include "fixpoint/sampling.hpp"

#include <cmath>
#include <random>

namespace fixpoint {

namespace {

// Uniform point of the unit ball in R^k.
Vector unit_ball_point(std::mt19937_64& rng, Eigen::Index k) {
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> uniform;
    Vector g(k);
    double n = 0.0;
    do {
        for (Eigen::Index i = 0; i < k; ++i) g[i] = normal(rng);
        n = g.norm();
    } while (n == 0.0);
    const double u = uniform(rng);
    return (std::pow(u, 1.0 / static_cast<double>(k)) / n) * g;
}

class RegionDraw {
public:
    RegionDraw(const Region& region, const Lambda& lambda, std::uint64_t seed) : rng_(seed) {
        if (lambda.is_whole()) {
            origin_ = region.center;
            radius_ = region.radius;
            return;
        }
        const auto& aff = std::get<AffineSubspace>(lambda.subspace()->variant());
        basis_ = aff.basis;
        origin_ = lambda.project(region.center);
        const double off = (origin_ - region.center).norm();
        radius_ = off <= region.radius ? std::sqrt(region.radius * region.radius - off * off) : -1.0;
        affine_ = true;
    }

    bool empty() const { return radius_ < 0.0; }

    Vector next() {
        if (!affine_) return origin_ + radius_ * unit_ball_point(rng_, origin_.size());
        if (basis_.empty()) return origin_;
        const Vector u = unit_ball_point(rng_, static_cast<Eigen::Index>(basis_.size()));
        Vector x = origin_;
        for (std::size_t i = 0; i < basis_.size(); ++i) x += radius_ * u[static_cast<Eigen::Index>(i)] * basis_[i];
        return x;
    }

private:
    std::mt19937_64 rng_;
    Vector origin_;
    Points basis_;
    double radius_ = 0.0;
    bool affine_ = false;
};

} // namespace

Points sample_region(const Region& region, const Lambda& lambda, std::size_t count,
                     std::uint64_t seed) {
    RegionDraw draw(region, lambda, seed);
    Points out;
    if (draw.empty()) return out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(draw.next());
    return out;
}

Points sample_on_set(const SetSpec& s, const Region& region, const Lambda& lambda,
                     std::size_t count, std::uint64_t seed) {
    require_dim(region.center, s.dim(), "sample region");
    RegionDraw draw(region, lambda, seed);
    Points out;
    if (draw.empty()) return out;
    out.reserve(count);
    const std::size_t budget = 200 * count;
    for (std::size_t i = 0; i < budget && out.size() < count; ++i) {
        Vector p = project_one(s, draw.next());
        if (region.contains(p) && lambda.contains(p)) out.push_back(std::move(p));
    }
    return out;
}

SampleCertificate certify(std::uint64_t seed, const Points& sample, const Region& region) {
    SampleCertificate c;
    c.seed = seed;
    c.count = sample.size();
    if (!sample.empty())
        c.grid_spacing = region.radius * std::pow(static_cast<double>(sample.size()),
                                                  -1.0 / static_cast<double>(region.center.size()));
    return c;
}

} // namespace fixpoint
