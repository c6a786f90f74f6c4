#include "horokit/packing.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <set>

using namespace horokit;
using Catch::Approx;

namespace {

const std::vector<PackingCase> kAllCases{PackingCase::BF336, PackingCase::KS336, PackingCase::Balanced436,
                                         PackingCase::Maximal436};

// s from lambda^2 = (1 + s) / (1 - s)
double s_from_lambda2(double l2) { return (l2 - 1) / (l2 + 1); }

// Horoball as a raw light vector, compared up to floating noise.
bool same_light_vector(const Vec4& a, const Vec4& b) {
    return (a - b).cwiseAbs().maxCoeff() <= 1e-8 * std::max(1.0, a.cwiseAbs().maxCoeff());
}

std::size_t brute_force_crown1_count(const PackingConfig& c, const GeneratorSet& g) {
    std::vector<Vec4> seen;
    auto add = [&](const Vec4& L) {
        for (const auto& s : seen)
            if (same_light_vector(s, L))
                return;
        seen.push_back(L);
    };
    for (const auto& h : c.assignments)
        add(h.light_vector());
    for (const auto& gen : g.generators) {
        const Mat4 M = gen.matrix / std::sqrt(lorentz_scale(gen.matrix));
        for (const auto& h : c.assignments) {
            Vec4 L = M * h.light_vector();
            if (L[0] < 0)
                L = -L;
            add(L);
        }
    }
    return seen.size();
}

bool contains_ball(const std::vector<OrbitHoroball>& balls, const Horoball& h, int max_crown) {
    for (const auto& b : balls)
        if (b.crown <= max_crown && (b.ball.axis() - h.axis()).norm() < 1e-8 &&
            std::abs(b.ball.depth() - h.depth()) < 1e-8 * std::max(1.0, std::abs(h.depth())))
            return true;
    return false;
}

} // namespace

TEST_CASE("case and tiling parsing") {
    CHECK(parse_tiling("336") == DomainKind::Tetra336);
    CHECK(parse_tiling("436") == DomainKind::Cube436);
    CHECK_THROWS_AS(parse_tiling("535"), ParameterError);
    CHECK(parse_case(DomainKind::Tetra336, "ks") == PackingCase::KS336);
    CHECK(parse_case(DomainKind::Cube436, "maximal") == PackingCase::Maximal436);
    CHECK_THROWS_AS(parse_case(DomainKind::Tetra336, "balanced"), ParameterError);
    CHECK_THROWS_AS(parse_case(DomainKind::Cube436, "bf"), ParameterError);
    for (auto pc : kAllCases)
        CHECK(parse_case(domain_kind(pc), to_string(pc)) == pc);
}

TEST_CASE("tetrahedral configurations use the tabulated s-values") {
    // s = (0, 3/5, 3/5, 3/5) and (1/2, 1/7, 1/7, 1/7)
    const auto bf = fundamental_configuration(PackingCase::BF336);
    const auto ks = fundamental_configuration(PackingCase::KS336);
    const std::vector<double> sbf{0, 0.6, 0.6, 0.6}, sks{0.5, 1.0 / 7, 1.0 / 7, 1.0 / 7};
    for (std::size_t v = 0; v < 4; ++v) {
        CHECK(bf.assignments[v].s() == Approx(sbf[v]).margin(1e-15));
        CHECK(ks.assignments[v].s() == Approx(sks[v]).margin(1e-15));
        CHECK(projectively_equal(bf.assignments[v].center(), bf.domain.vertices[v]));
    }
}

TEST_CASE("balanced cubic configuration") {
    const auto c = fundamental_configuration(PackingCase::Balanced436);
    REQUIRE(c.assignments.size() == 8);
    // tangency lambda_a lambda_b kappa = 2 with kappa = 4/3 between
    // face-diagonal vertices and 2/3 along edges: lambda^2 = 3/2 and 6
    for (int v : {0, 4, 5, 6})
        CHECK(c.assignments[static_cast<std::size_t>(v)].s() == Approx(s_from_lambda2(1.5)).margin(1e-11));
    for (int v : {1, 2, 3, 7})
        CHECK(c.assignments[static_cast<std::size_t>(v)].s() == Approx(s_from_lambda2(6.0)).margin(1e-11));
    for (std::size_t a = 0; a < 8; ++a)
        for (std::size_t b = a + 1; b < 8; ++b)
            CHECK(chord_gap(c.assignments[a], c.assignments[b]) >= -1e-10);
    const auto types = horoball_types(c);
    CHECK(std::set<int>(types.begin(), types.end()).size() == 2);
    CHECK(types == std::vector<int>{0, 1, 1, 1, 0, 0, 0, 1});
    CHECK_FALSE(c.derivation_log.empty());
}

TEST_CASE("maximal cubic configuration") {
    const auto c = fundamental_configuration(PackingCase::Maximal436);
    // vertex 0 touches its three opposite facets (lambda^2 = 1/2);
    // the rest are tangent to it: lambda^2 = 9/(2 kappa^2 lambda0^2)
    const std::vector<double> l2{0.5, 18, 18, 18, 4.5, 4.5, 4.5, 2};
    for (std::size_t v = 0; v < 8; ++v)
        CHECK(c.assignments[v].s() == Approx(s_from_lambda2(l2[v])).margin(1e-11));
    for (int v = 0; v < 8; ++v)
        CHECK(admissibility_margin(c, v) >= -1e-10);
    CHECK(std::abs(admissibility_margin(c, 0)) < 1e-9);
    const auto types = horoball_types(c);
    CHECK(types == std::vector<int>{0, 1, 1, 1, 2, 2, 2, 3});
}

TEST_CASE("type counts") {
    auto count = [](PackingCase pc) {
        const auto t = horoball_types(fundamental_configuration(pc));
        return std::set<int>(t.begin(), t.end()).size();
    };
    CHECK(count(PackingCase::BF336) == 2);
    CHECK(count(PackingCase::KS336) == 1);
    CHECK(count(PackingCase::Balanced436) == 2);
    CHECK(count(PackingCase::Maximal436) == 4);
}

TEST_CASE("configuration_from_s validates its input") {
    CHECK_THROWS_AS(configuration_from_s(PackingCase::BF336, {0.1, 0.2}), ParameterError);
    CHECK_THROWS_AS(configuration_from_s(PackingCase::BF336, {0.1, 0.2, 0.3, 1.5}), DomainError);
}

TEST_CASE("depth bisection reports non-convergent brackets") {
    CHECK_THROWS_AS(detail::bisect_depth([](double) { return 1.0; }), ConfigurationError);
    CHECK_THROWS_AS(detail::bisect_depth([](double) { return -1.0; }), ConfigurationError);
    CHECK(detail::bisect_depth([](double x) { return x - 0.25; }) == Approx(0.25).margin(1e-12));
}

TEST_CASE("crown 0 is the fundamental configuration") {
    for (auto pc : kAllCases) {
        const auto c = fundamental_configuration(pc);
        const auto o = expand_orbit(c, 0, generator_set(c.domain));
        CHECK(o.records.size() == 1);
        CHECK(o.horoballs.size() == c.domain.vertex_count());
        for (const auto& h : o.horoballs)
            CHECK(h.crown == 0);
    }
    const auto c = fundamental_configuration(PackingCase::BF336);
    CHECK_THROWS_AS(expand_orbit(c, -1, generator_set(c.domain)), ParameterError);
}

TEST_CASE("crown 1 counts against a brute-force oracle") {
    for (auto pc : kAllCases) {
        const auto c = fundamental_configuration(pc);
        const auto g = generator_set(c.domain);
        const auto o = expand_orbit(c, 1, g);
        CHECK(o.records.size() == 1 + c.domain.facet_count());
        CHECK(o.horoballs.size() == brute_force_crown1_count(c, g));
    }
    const auto bf = fundamental_configuration(PackingCase::BF336);
    CHECK(expand_orbit(bf, 1, generator_set(bf.domain)).horoballs.size() == 8);
}

TEST_CASE("orbit ordering and reduced words") {
    const auto c = fundamental_configuration(PackingCase::KS336);
    const auto o = expand_orbit(c, 3, generator_set(c.domain));
    for (std::size_t i = 0; i < o.records.size(); ++i) {
        const auto& r = o.records[i];
        CHECK(static_cast<int>(r.word.size()) == r.crown);
        for (std::size_t k = 1; k < r.word.size(); ++k)
            CHECK(r.word[k] != r.word[k - 1]);
        if (i > 0) {
            const auto& p = o.records[i - 1];
            CHECK(std::make_pair(p.crown, p.word) < std::make_pair(r.crown, r.word));
        }
    }
    for (std::size_t i = 1; i < o.horoballs.size(); ++i) {
        const auto& p = o.horoballs[i - 1];
        const auto& h = o.horoballs[i];
        CHECK(std::make_tuple(p.crown, p.word, p.source_vertex) < std::make_tuple(h.crown, h.word, h.source_vertex));
    }
}

TEST_CASE("expansion is deterministic") {
    const auto c = fundamental_configuration(PackingCase::Maximal436);
    const auto g = generator_set(c.domain);
    const auto a = expand_orbit(c, 2, g), b = expand_orbit(c, 2, g);
    REQUIRE(a.horoballs.size() == b.horoballs.size());
    for (std::size_t i = 0; i < a.horoballs.size(); ++i) {
        CHECK(a.horoballs[i].word == b.horoballs[i].word);
        CHECK(a.horoballs[i].ball.depth() == b.horoballs[i].ball.depth());
        CHECK(a.horoballs[i].ball.axis() == b.horoballs[i].ball.axis());
    }
}

TEST_CASE("group closure at the horoball level") {
    for (auto pc : {PackingCase::BF336, PackingCase::Balanced436}) {
        const auto c = fundamental_configuration(pc);
        const auto g = generator_set(c.domain);
        const int kmax = pc == PackingCase::BF336 ? 3 : 2;
        const auto o = expand_orbit(c, kmax + 1, g);
        for (const auto& h : o.horoballs) {
            if (h.crown > kmax)
                continue;
            for (const auto& gen : g.generators)
                CHECK(contains_ball(o.horoballs, transform(h.ball, gen), h.crown + 1));
        }
    }
}

TEST_CASE("packing verification") {
    const auto bf = fundamental_configuration(PackingCase::BF336);
    const auto g = generator_set(bf.domain);
    const auto rep = verify_packing(expand_orbit(bf, 3, g), 1e-9);
    CHECK(rep.valid());
    CHECK(rep.overlapping == 0);
    CHECK(rep.tangent > 0);

    // shrinking s1 from 3/5 to 1/2 enlarges B1..B3 into B0
    const auto bad = configuration_from_s(PackingCase::BF336, {0, 0.5, 0.5, 0.5});
    const auto r2 = verify_packing(expand_orbit(bad, 1, g), 1e-9);
    CHECK_FALSE(r2.valid());
    CHECK(r2.overlapping >= 1);
    CHECK(r2.worst_overlap > 0.0);

    // a single ball is trivially a packing
    const auto single = verify_packing(std::vector<Horoball>{bf.assignments[0]});
    CHECK(single.valid());
    CHECK(single.edges.empty());
}

TEST_CASE("tangency graphs at crown 0") {
    const auto bf = fundamental_configuration(PackingCase::BF336);
    const auto g = generator_set(bf.domain);
    const auto tb = tangency_graph(expand_orbit(bf, 0, g));
    CHECK(tb.degrees == std::vector<int>{3, 1, 1, 1});
    CHECK(tb.degree_histogram == std::map<int, std::size_t>{{1, 3}, {3, 1}});
    for (const auto& e : tb.edges)
        if (e.a == 0 && e.b == 1)
            CHECK((e.point.klein() - Vec3(0, 2.0 / 3, 1.0 / 3)).norm() < 1e-9);

    const auto ks = fundamental_configuration(PackingCase::KS336);
    const auto tk = tangency_graph(expand_orbit(ks, 0, g));
    CHECK(tk.edges.size() == 6);
    CHECK(tk.degrees == std::vector<int>{3, 3, 3, 3});

    const auto empty = tangency_graph(Orbit{});
    CHECK(empty.node_count == 0);
    CHECK(empty.edges.empty());
}

TEST_CASE("all four packings are overlap-free through crown 3") {
    for (auto pc : kAllCases) {
        const auto c = fundamental_configuration(pc);
        const auto rep = verify_packing(expand_orbit(c, 3, generator_set(c.domain)), 1e-9);
        CHECK(rep.overlapping == 0);
    }
}
