#pragma once

// Packing density of a fundamental configuration: the fraction of the
// cell's hyperbolic volume covered by the vertex horoballs.

#include "horokit/packing.hpp"
#include "horokit/volume.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace horokit {

enum class DensityMethod { Exact, MonteCarlo };

inline const char* to_string(DensityMethod m) { return m == DensityMethod::Exact ? "exact" : "mc"; }

inline DensityMethod parse_method(const std::string& s) {
    if (s == "exact")
        return DensityMethod::Exact;
    if (s == "mc")
        return DensityMethod::MonteCarlo;
    throw ParameterError("unknown density method '" + s + "' (expected exact or mc)");
}

struct DensityEstimate {
    double value = 0.0;
    DensityMethod method = DensityMethod::Exact;
    double standard_error = 0.0; // MC only
    std::uint64_t samples = 0;   // MC only
};

struct McParams {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
};

inline constexpr std::uint64_t kMinMcSamples = 10'000;

/// Throws unless every vertex ball meets the cell only in its vertex cusp;
/// then the balls of the whole packing meet each cell in exactly the pieces
/// of its own vertex balls.
inline void require_admissible(const PackingConfig& c, double tol = 1e-10) {
    for (int v = 0; v < static_cast<int>(c.domain.vertex_count()); ++v)
        if (admissibility_margin(c, v) < -tol)
            throw DomainError("ball at vertex " + std::to_string(v) + " crosses a facet not incident with it");
}

inline DensityEstimate density_exact(const PackingConfig& c) {
    require_admissible(c);
    double covered = 0.0;
    for (double v : piece_volumes(c))
        covered += v;
    return {covered / cell_volume(c.domain), DensityMethod::Exact, 0.0, 0};
}

/// Stratified Monte Carlo over the Klein bounding box of the cell. The
/// integrand is the volume element 1/(1-r^2)^2 restricted to the part of the
/// cell outside every vertex ball; that region stays away from the ideal
/// boundary, so the integrand is bounded and the variance finite.
inline DensityEstimate density_monte_carlo(const PackingConfig& c, const McParams& p) {
    if (p.samples < kMinMcSamples)
        throw ParameterError("Monte-Carlo density needs at least " + std::to_string(kMinMcSamples) + " samples");
    require_admissible(c);
    const FundamentalDomain& d = c.domain;

    Vec3 lo = Vec3::Constant(1.0), hi = Vec3::Constant(-1.0);
    for (const auto& v : d.vertices) {
        const Vec3 k = v.canonical().klein();
        lo = lo.cwiseMin(k);
        hi = hi.cwiseMax(k);
    }
    const auto m = static_cast<int>(std::max<double>(1.0, std::floor(std::cbrt(static_cast<double>(p.samples) / 16.0))));
    const std::uint64_t strata = static_cast<std::uint64_t>(m) * m * m;
    const std::uint64_t per = (p.samples + strata - 1) / strata;
    const Vec3 step = (hi - lo) / m;
    const double cell_box = step.prod();

    struct Ball {
        Vec3 n;
        double oms;
    };
    std::vector<Ball> balls;
    for (const auto& h : c.assignments)
        balls.push_back({h.axis(), h.one_minus_s()});
    auto uncovered_weight = [&](const Vec3& x) {
        for (const auto& f : d.facet_forms)
            if (f[0] + f.coeffs().tail<3>().dot(x) < 0.0)
                return 0.0;
        const double omr2 = 1.0 - x.squaredNorm();
        if (omr2 <= 0.0)
            return 0.0;
        for (const auto& b : balls) {
            const double a = x.dot(b.n);
            const double rho2 = (x - a * b.n).squaredNorm();
            const double dz = (a - 1.0) + 0.5 * b.oms;
            if (2.0 * rho2 / b.oms + 4.0 * dz * dz / (b.oms * b.oms) <= 1.0)
                return 0.0;
        }
        return 1.0 / (omr2 * omr2);
    };

    double total = 0.0, variance = 0.0;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::uint64_t s = 0; s < strata; ++s) {
        const auto ix = static_cast<int>(s % m), iy = static_cast<int>((s / m) % m), iz = static_cast<int>(s / (static_cast<std::uint64_t>(m) * m));
        const Vec3 corner = lo + Vec3(ix * step[0], iy * step[1], iz * step[2]);
        std::seed_seq seq{static_cast<std::uint32_t>(p.seed), static_cast<std::uint32_t>(p.seed >> 32),
                          static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32)};
        std::mt19937_64 rng(seq);
        double sum = 0.0, sum2 = 0.0;
        for (std::uint64_t k = 0; k < per; ++k) {
            Vec3 x = corner;
            for (int a = 0; a < 3; ++a)
                x[a] += unit(rng) * step[a];
            const double w = uncovered_weight(x);
            sum += w;
            sum2 += w * w;
        }
        const double mean = sum / static_cast<double>(per);
        const double var = per > 1 ? std::max(0.0, (sum2 - sum * mean) / static_cast<double>(per - 1)) : 0.0;
        total += mean * cell_box;
        variance += var * cell_box * cell_box / static_cast<double>(per);
    }
    const double vol = cell_volume(d);
    return {1.0 - total / vol, DensityMethod::MonteCarlo, std::sqrt(variance) / vol, per * strata};
}

inline DensityEstimate density(const PackingConfig& c, DensityMethod method, const McParams& p = {}) {
    return method == DensityMethod::Exact ? density_exact(c) : density_monte_carlo(c, p);
}

} // namespace horokit
