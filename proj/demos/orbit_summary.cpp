// Prints, for each of the four optimal packings, the solved horoball
// parameters, the density, and the growth of the orbit crown by crown.

#include "horokit/horokit.hpp"

#include <cstdio>
#include <cstdlib>

int main(int argc, char** argv) {
    using namespace horokit;
    const int crowns = argc > 1 ? std::atoi(argv[1]) : 3;
    for (auto pc : {PackingCase::BF336, PackingCase::KS336, PackingCase::Balanced436, PackingCase::Maximal436}) {
        const PackingConfig c = fundamental_configuration(pc);
        const GeneratorSet g = generator_set(c.domain);
        std::printf("{%s} %s  density %.10f\n", to_string(c.domain.kind), to_string(pc), density_exact(c).value);
        std::printf("  s:");
        for (const auto& h : c.assignments)
            std::printf(" %.6f", h.s());
        std::printf("\n");
        for (int k = 0; k <= crowns; ++k) {
            const Orbit o = expand_orbit(c, k, g);
            const PackingReport r = verify_packing(o);
            std::printf("  crown %d: %4zu isometries %5zu horoballs %6zu tangencies %zu overlaps\n", k,
                        o.records.size(), o.horoballs.size(), r.tangent, r.overlapping);
        }
    }
}
