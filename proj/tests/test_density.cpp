#include "horokit/density.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace horokit;
using Catch::Approx;

namespace {

constexpr double kRegularIdealTetra = 1.01494160640965362502120255427;
// sqrt(3) / (2 V_tet): the optimal horoball packing density
const double kOptimal = std::sqrt(3.0) / (2 * kRegularIdealTetra);

} // namespace

TEST_CASE("exact densities of the four optimal configurations") {
    // 0.85328...
    for (auto pc : {PackingCase::BF336, PackingCase::KS336, PackingCase::Balanced436, PackingCase::Maximal436}) {
        const auto d = density_exact(fundamental_configuration(pc));
        CHECK(d.method == DensityMethod::Exact);
        CHECK(d.value == Approx(0.85328).margin(1e-5));
        // closed form sqrt(3) / (2 V_tet)
        CHECK(d.value == Approx(kOptimal).epsilon(1e-9));
    }
}

TEST_CASE("exact density is piece volume over cell volume") {
    const auto c = configuration_from_s(PackingCase::BF336, {0.2, 0.7, 0.7, 0.7});
    double sum = 0.0;
    for (double v : piece_volumes(c))
        sum += v;
    CHECK(density_exact(c).value == Approx(sum / kRegularIdealTetra).epsilon(1e-12));
    CHECK(density_exact(c).value < kOptimal);
}

TEST_CASE("inadmissible balls are rejected") {
    const auto c = configuration_from_s(PackingCase::BF336, {-0.5, 0.9, 0.9, 0.9});
    CHECK_THROWS_AS(density_exact(c), DomainError);
    CHECK_THROWS_AS(density_monte_carlo(c, {20000, 1}), DomainError);
}

TEST_CASE("Monte-Carlo density agrees with the exact value") {
    for (auto pc : {PackingCase::BF336, PackingCase::KS336, PackingCase::Maximal436}) {
        const auto c = fundamental_configuration(pc);
        const auto mc = density_monte_carlo(c, {400'000, 7});
        CHECK(mc.method == DensityMethod::MonteCarlo);
        CHECK(mc.samples >= 400'000);
        CHECK(mc.standard_error > 0.0);
        CHECK(std::abs(mc.value - density_exact(c).value) <= 3 * mc.standard_error);
    }
}

TEST_CASE("Monte-Carlo is deterministic for a fixed seed") {
    const auto c = fundamental_configuration(PackingCase::BF336);
    const auto a = density_monte_carlo(c, {50'000, 42});
    const auto b = density_monte_carlo(c, {50'000, 42});
    const auto d = density_monte_carlo(c, {50'000, 43});
    CHECK(a.value == b.value);
    CHECK(a.standard_error == b.standard_error);
    CHECK(a.value != d.value);
}

TEST_CASE("Monte-Carlo parameter validation") {
    const auto c = fundamental_configuration(PackingCase::BF336);
    CHECK_THROWS_AS(density_monte_carlo(c, {100, 1}), ParameterError);
    CHECK_THROWS_AS(density(c, DensityMethod::MonteCarlo, {9'999, 1}), ParameterError);
    CHECK(parse_method("mc") == DensityMethod::MonteCarlo);
    CHECK_THROWS_AS(parse_method("guess"), ParameterError);
}
