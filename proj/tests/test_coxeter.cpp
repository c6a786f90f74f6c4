#include "horokit/coxeter.hpp"
#include "horokit/reference_tables.hpp"

#include <catch_amalgamated.hpp>

#include <chrono>
#include <cmath>
#include <numbers>

using namespace horokit;
using Catch::Approx;

namespace {

const Mat4 J = Vec4(-1, 1, 1, 1).asDiagonal();

// Plane through three Klein points by a cofactor expansion.
Vec4 plane_through(const Vec4& p, const Vec4& q, const Vec4& r) {
    Vec4 a;
    for (int c = 0; c < 4; ++c) {
        Eigen::Matrix3d m;
        int col = 0;
        for (int k = 0; k < 4; ++k) {
            if (k == c)
                continue;
            m.col(col++) = Eigen::Vector3d(p[k], q[k], r[k]);
        }
        a[c] = ((c % 2) ? -1.0 : 1.0) * m.determinant();
    }
    return a;
}

// Lorentz reflection in the plane a . x = 0.
Mat4 reflection_oracle(const Vec4& a) {
    const Vec4 u = J * a;
    return Mat4::Identity() - 2.0 * u * a.transpose() / a.dot(u);
}

Mat4 oracle_generator(const FundamentalDomain& d, int f) {
    const auto& idx = d.facets[static_cast<std::size_t>(f)];
    return reflection_oracle(plane_through(d.vertices[static_cast<std::size_t>(idx[0])].coords(),
                                           d.vertices[static_cast<std::size_t>(idx[1])].coords(),
                                           d.vertices[static_cast<std::size_t>(idx[2])].coords()));
}

} // namespace

TEST_CASE("built-in vertices are ideal and facets are planar") {
    for (auto k : {DomainKind::Tetra336, DomainKind::Cube436}) {
        const auto d = builtin_domain(k);
        for (const auto& v : d.vertices)
            CHECK(classify(v, 1e-14) == PointClass::Ideal);
        for (std::size_t f = 0; f < d.facet_count(); ++f) {
            for (int v = 0; v < static_cast<int>(d.vertex_count()); ++v) {
                const double c = d.facet_forms[f].contract(d.vertices[static_cast<std::size_t>(v)]);
                if (d.facet_contains(static_cast<int>(f), v))
                    CHECK(std::abs(c) < 1e-14);
                else
                    CHECK(c > 1e-3); // interior orientation
            }
            CHECK(lorentz_dot(pole(d.facet_forms[f]).coords(), pole(d.facet_forms[f]).coords()) == Approx(1.0));
        }
    }
}

TEST_CASE("degenerate facets are rejected") {
    std::vector<ProjectivePoint> v{ProjectivePoint(1, 0, 0, 1), ProjectivePoint(1, 0, 0, 1),
                                   ProjectivePoint(1, 0, 1, 0), ProjectivePoint(1, 1, 0, 0)};
    CHECK_THROWS_AS(detail::solve_facet_form(v, {0, 1, 2}), DegenerateFacetError);
}

TEST_CASE("tetrahedral facet forms") {
    const auto d = builtin_domain(DomainKind::Tetra336);
    const double r3 = std::sqrt(3.0);
    // cofactor planes through each vertex triple
    const std::vector<Vec4> expected{Vec4(0, 0, 0, 1), Vec4(1, 0, 2, -1), Vec4(1, r3, -1, -1), Vec4(1, -r3, -1, -1)};
    for (int f = 0; f < 4; ++f)
        CHECK(projective_vector_deviation(d.facet_forms[static_cast<std::size_t>(f)].coeffs(),
                                          expected[static_cast<std::size_t>(f)]) < 1e-12);
}

TEST_CASE("tetrahedral Gram matrix: all dihedral angles pi/3") {
    const auto d = builtin_domain(DomainKind::Tetra336);
    const auto G = gram_matrix(d.facet_forms);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(G(i, j) == Approx(i == j ? 1.0 : -0.5).margin(1e-12));
}

TEST_CASE("cube facet relations: adjacent pi/3, opposite diverging") {
    const auto d = builtin_domain(DomainKind::Cube436);
    const auto s = scheme_from_domain(d);
    int inter = 0, div = 0;
    for (const auto& e : s.edges) {
        if (e.kind == EdgeKind::Intersecting) {
            ++inter;
            CHECK(e.order == 3);
            CHECK(facets_adjacent(d, e.i, e.j));
        } else {
            ++div;
            CHECK(e.kind == EdgeKind::Diverging);
            CHECK(shared_vertex_count(d, e.i, e.j) == 0);
        }
    }
    CHECK(inter == 12);
    CHECK(div == 3);
    CHECK(s.edge(0, 5).has_value());
    CHECK(s.edge(0, 5)->kind == EdgeKind::Diverging);
    CHECK(honeycomb_symbol(DomainKind::Cube436).cell_dihedral_angle() == Approx(std::numbers::pi / 3));
}

TEST_CASE("cell combinatorics") {
    const auto t = builtin_domain(DomainKind::Tetra336);
    const auto c = builtin_domain(DomainKind::Cube436);
    CHECK(vertex_neighbors(t, 0) == std::vector<int>{1, 2, 3});
    CHECK(vertex_neighbors(c, 0) == std::vector<int>{1, 2, 3});
    CHECK(vertex_neighbors(c, 7) == std::vector<int>{4, 5, 6});
    for (int f = 0; f < 6; ++f) {
        const auto ring = ordered_facet(c, f);
        REQUIRE(ring.size() == 4);
        for (std::size_t k = 0; k < 4; ++k) {
            const auto nb = vertex_neighbors(c, ring[k]);
            CHECK(std::find(nb.begin(), nb.end(), ring[(k + 1) % 4]) != nb.end());
        }
    }
}

TEST_CASE("solved generators equal the Lorentz reflections in the facets") {
    for (auto k : {DomainKind::Tetra336, DomainKind::Cube436}) {
        const auto d = builtin_domain(k);
        const auto g = generator_set(d);
        REQUIRE(g.size() == d.facet_count());
        for (int f = 0; f < static_cast<int>(d.facet_count()); ++f) {
            const Mat4 oracle = oracle_generator(d, f);
            CHECK((g[static_cast<std::size_t>(f)].matrix - oracle).cwiseAbs().maxCoeff() < 1e-9);
            CHECK(g[static_cast<std::size_t>(f)].word == std::vector<int>{f});
        }
    }
}

TEST_CASE("printed generator matrices are reproduced up to scale") {
    // tetrahedral g1..g4 and cubic g1..g6
    auto start = std::chrono::steady_clock::now();
    const auto gt = generator_set(builtin_domain(DomainKind::Tetra336));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(secs < 1.0);
    const auto pt = reference::tetra_generators();
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(projective_matrix_deviation(gt[i].matrix, pt[i]) <= 1e-9);
    const auto gc = generator_set(builtin_domain(DomainKind::Cube436));
    const auto pc = reference::cube_generators();
    for (std::size_t i = 0; i < 6; ++i)
        CHECK(projective_matrix_deviation(gc[i].matrix, pc[i]) <= 1e-9);
}

TEST_CASE("reflection images") {
    const auto c = builtin_domain(DomainKind::Cube436);
    // g1 . E7 = (1, 0, 2 sqrt(2)/3, 1/3)
    const auto img = reflection_image(c, 0, 7);
    CHECK((img.coords() - Vec4(1, 0, 2 * std::sqrt(2.0) / 3, 1.0 / 3)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THROWS_AS(reflection_image(c, 0, 0), DomainError);
    // the image is the oracle reflection applied to the vertex
    const Vec4 o = oracle_generator(c, 0) * c.vertices[7].coords();
    CHECK(projective_vector_deviation(img.coords(), o) < 1e-12);
}

TEST_CASE("group relations hold for both domains") {
    for (auto k : {DomainKind::Tetra336, DomainKind::Cube436}) {
        const auto d = builtin_domain(k);
        const auto rep = verify_relations(generator_set(d), scheme_from_domain(d), 1e-9);
        CHECK(rep.ok);
        CHECK(rep.max_residual <= 1e-9);
        for (const auto& r : rep.relations) {
            if (r.kind != EdgeKind::Diverging)
                continue;
            // translation length is twice the distance between the planes
            const auto rel = plane_pair_relation(d.facet_forms[static_cast<std::size_t>(r.i)],
                                                 d.facet_forms[static_cast<std::size_t>(r.j)]);
            CHECK(r.translation_length == Approx(2 * std::get<Diverging>(rel).length).epsilon(1e-9));
        }
    }
}

TEST_CASE("relation check detects a wrong generator") {
    const auto d = builtin_domain(DomainKind::Tetra336);
    auto g = generator_set(d);
    Mat4 rot = Mat4::Identity();
    rot(1, 1) = rot(2, 2) = std::cos(0.1);
    rot(1, 2) = -std::sin(0.1);
    rot(2, 1) = std::sin(0.1);
    g.generators[1].matrix = rot * g.generators[1].matrix;
    CHECK_FALSE(verify_relations(g, scheme_from_domain(d), 1e-9).ok);
}

TEST_CASE("table cross-check: every unambiguous entry matches, errata are flagged") {
    for (auto k : {DomainKind::Tetra336, DomainKind::Cube436}) {
        const auto d = builtin_domain(k);
        const auto entries = cross_check_tables(d, generator_set(d), 1e-9);
        std::vector<std::string> errata;
        for (const auto& e : entries) {
            CHECK(e.status != CheckStatus::Mismatch);
            if (e.status == CheckStatus::KnownErratum)
                errata.push_back(e.label);
            else
                CHECK(e.deviation <= 1e-9);
        }
        if (k == DomainKind::Tetra336)
            CHECK(errata == std::vector<std::string>{"336 facet 0 normal"});
        else
            CHECK(errata == std::vector<std::string>{"436 facet 4 image of E0", "436 vertex E4"});
    }
}

TEST_CASE("the corrected reading of the malformed cubic image row is reproduced") {
    const auto c = builtin_domain(DomainKind::Cube436);
    const auto img = reflection_image(c, 4, 0);
    CHECK((img.coords() - Vec4(1, std::sqrt(2.0 / 3), std::sqrt(2.0) / 3, -1.0 / 3)).cwiseAbs().maxCoeff() < 1e-12);
}
