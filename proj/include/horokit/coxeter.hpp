#pragma once

// Fundamental cells of the {3,3,6} and {4,3,6} honeycombs and the reflection
// groups generated by their facets.

#include "horokit/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace horokit {

class DegenerateFacetError : public Error {
  public:
    using Error::Error;
};

class SolverError : public NumericError {
  public:
    using NumericError::NumericError;
};

enum class DomainKind { Tetra336, Cube436 };

inline const char* to_string(DomainKind k) { return k == DomainKind::Tetra336 ? "336" : "436"; }

struct FundamentalDomain {
    DomainKind kind;
    std::vector<ProjectivePoint> vertices;
    /// Vertex indices of each facet (unordered).
    std::vector<std::vector<int>> facets;
    /// Interior-oriented, normalized so that the pole has unit Lorentz norm.
    std::vector<PlaneForm> facet_forms;

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t facet_count() const { return facets.size(); }

    bool facet_contains(int facet, int vertex) const {
        const auto& f = facets[static_cast<std::size_t>(facet)];
        return std::find(f.begin(), f.end(), vertex) != f.end();
    }
};

namespace detail {

inline PlaneForm solve_facet_form(const std::vector<ProjectivePoint>& vertices, const std::vector<int>& facet) {
    if (facet.size() < 3)
        throw DegenerateFacetError("facet needs at least three vertices");
    Eigen::MatrixXd A(static_cast<Eigen::Index>(facet.size()), 4);
    for (std::size_t r = 0; r < facet.size(); ++r)
        A.row(static_cast<Eigen::Index>(r)) =
            vertices[static_cast<std::size_t>(facet[r])].canonical().coords().normalized().transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double top = sv[0];
    // rank must be exactly three
    if (sv.size() < 3 || sv[2] <= 1e-9 * top)
        throw DegenerateFacetError("facet vertices do not span a plane");
    if (sv.size() > 3 && sv[3] > 1e-9 * top)
        throw DegenerateFacetError("facet vertices are not coplanar");
    Vec4 a = svd.matrixV().col(3);

    double side = 0.0;
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        if (std::find(facet.begin(), facet.end(), static_cast<int>(v)) != facet.end())
            continue;
        side += a.dot(vertices[v].canonical().coords());
    }
    if (side < 0.0)
        a = -a;
    const double aa = a.dot(signature_matrix() * a);
    if (aa > 0.0)
        a /= std::sqrt(aa);
    return PlaneForm(a);
}

} // namespace detail

inline PlaneForm facet_form(const FundamentalDomain& domain, int facet_index) {
    return detail::solve_facet_form(domain.vertices, domain.facets.at(static_cast<std::size_t>(facet_index)));
}

/// The two ideal cells in the coordinates used throughout horokit.
///
/// Tetra336: facet i is opposite vertex i.
/// Cube436: facets are listed as E0E1E2E4, E0E1E3E5, E0E2E3E6, E7E1E4E5,
/// E7E2E4E6, E7E3E5E6.
inline FundamentalDomain builtin_domain(DomainKind kind) {
    FundamentalDomain d{kind, {}, {}, {}};
    const double r3 = std::sqrt(3.0);
    if (kind == DomainKind::Tetra336) {
        d.vertices = {
            ProjectivePoint(1, 0, 0, 1),
            ProjectivePoint(1, 0, 1, 0),
            ProjectivePoint(1, r3 / 2, -0.5, 0),
            ProjectivePoint(1, -r3 / 2, -0.5, 0),
        };
        d.facets = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
    } else {
        const double r2 = std::sqrt(2.0);
        const double r23 = r2 / r3; // sqrt(2)/sqrt(3)
        d.vertices = {
            ProjectivePoint(1, 0, 0, 1),
            ProjectivePoint(1, -r23, r2 / 3, 1.0 / 3),
            ProjectivePoint(1, r23, r2 / 3, 1.0 / 3),
            ProjectivePoint(1, 0, -2 * r2 / 3, 1.0 / 3),
            // the x2 entry is 2*sqrt(2)/3 (antipode of E3)
            ProjectivePoint(1, 0, 2 * r2 / 3, -1.0 / 3),
            ProjectivePoint(1, -r23, -r2 / 3, -1.0 / 3),
            ProjectivePoint(1, r23, -r2 / 3, -1.0 / 3),
            ProjectivePoint(1, 0, 0, -1),
        };
        d.facets = {{0, 1, 2, 4}, {0, 1, 3, 5}, {0, 2, 3, 6}, {7, 1, 4, 5}, {7, 2, 4, 6}, {7, 3, 5, 6}};
    }
    for (const auto& f : d.facets)
        d.facet_forms.push_back(detail::solve_facet_form(d.vertices, f));
    return d;
}

inline int shared_vertex_count(const FundamentalDomain& d, int f, int g) {
    int n = 0;
    for (int v : d.facets[static_cast<std::size_t>(f)])
        n += d.facet_contains(g, v) ? 1 : 0;
    return n;
}

/// Facets sharing an edge (two or more vertices).
inline bool facets_adjacent(const FundamentalDomain& d, int f, int g) {
    return f != g && shared_vertex_count(d, f, g) >= 2;
}

/// Vertices joined by an edge of the cell (contained in two common facets).
inline std::vector<int> vertex_neighbors(const FundamentalDomain& d, int v) {
    std::vector<int> out;
    for (int w = 0; w < static_cast<int>(d.vertex_count()); ++w) {
        if (w == v)
            continue;
        int common = 0;
        for (int f = 0; f < static_cast<int>(d.facet_count()); ++f)
            common += (d.facet_contains(f, v) && d.facet_contains(f, w)) ? 1 : 0;
        if (common >= 2)
            out.push_back(w);
    }
    return out;
}

/// Vertices of a facet in cyclic order around its centroid.
inline std::vector<int> ordered_facet(const FundamentalDomain& d, int facet) {
    std::vector<int> f = d.facets[static_cast<std::size_t>(facet)];
    Vec3 c = Vec3::Zero();
    for (int v : f)
        c += d.vertices[static_cast<std::size_t>(v)].klein();
    c /= static_cast<double>(f.size());
    const Vec3 n = d.facet_forms[static_cast<std::size_t>(facet)].coeffs().tail<3>().normalized();
    const Vec3 e1 = (d.vertices[static_cast<std::size_t>(f[0])].klein() - c).normalized();
    const Vec3 e2 = n.cross(e1);
    std::vector<std::pair<double, int>> keyed;
    for (int v : f) {
        const Vec3 p = d.vertices[static_cast<std::size_t>(v)].klein() - c;
        keyed.emplace_back(std::atan2(p.dot(e2), p.dot(e1)), v);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> out;
    for (const auto& kv : keyed)
        out.push_back(kv.second);
    return out;
}

inline ProjectivePoint reflection_image(const FundamentalDomain& d, int facet, int vertex) {
    const auto& a = d.facet_forms.at(static_cast<std::size_t>(facet));
    const ProjectivePoint& v = d.vertices.at(static_cast<std::size_t>(vertex));
    if (std::abs(a.contract(v.canonical())) <= 1e-9)
        throw DomainError("vertex lies on the reflecting facet");
    return second_quadric_intersection(v, perpendicular_foot(v, a));
}

struct GeneratorSet {
    DomainKind kind;
    std::vector<Isometry> generators;

    std::size_t size() const { return generators.size(); }
    const Isometry& operator[](std::size_t i) const { return generators[i]; }
};

/// Solves g.v_j = lambda_j w_j for the reflection in `facet_index`, where
/// w_j = v_j for vertices on the facet and the reflection image otherwise.
///
/// The eigen-scalars are fixed by the Lorentz condition: for every vertex
/// pair, lambda_j lambda_k <w_j, w_k> = c <v_j, v_k>. Taking c = 1 gives
/// |det| = 1; the scalars on the facet come out positive, so the facet is
/// fixed with eigenvalue +1.
inline Isometry solve_generator(const FundamentalDomain& d, int facet_index) {
    const std::size_t n = d.vertex_count();
    std::vector<Vec4> v(n), w(n);
    for (std::size_t j = 0; j < n; ++j) {
        v[j] = d.vertices[j].canonical().coords();
        w[j] = d.facet_contains(facet_index, static_cast<int>(j))
                   ? v[j]
                   : reflection_image(d, facet_index, static_cast<int>(j)).coords();
    }

    // log lambda_j + log lambda_k = log(<v_j,v_k> / <w_j,w_k>)
    const auto pairs = static_cast<Eigen::Index>(n * (n - 1) / 2);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(pairs, static_cast<Eigen::Index>(n));
    Eigen::VectorXd b(pairs);
    Eigen::Index row = 0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k, ++row) {
            const double ratio = lorentz_dot(v[j], v[k]) / lorentz_dot(w[j], w[k]);
            if (!(ratio > 0.0) || !std::isfinite(ratio))
                throw SolverError("inconsistent vertex images for generator");
            A(row, static_cast<Eigen::Index>(j)) = 1.0;
            A(row, static_cast<Eigen::Index>(k)) = 1.0;
            b[row] = std::log(ratio);
        }
    }
    const Eigen::VectorXd loglam = A.colPivHouseholderQr().solve(b);
    if ((A * loglam - b).cwiseAbs().maxCoeff() > 1e-8)
        throw SolverError("eigen-scalar system has no consistent solution");

    Eigen::MatrixXd V(4, static_cast<Eigen::Index>(n)), WL(4, static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
        V.col(static_cast<Eigen::Index>(j)) = v[j];
        WL.col(static_cast<Eigen::Index>(j)) = std::exp(loglam[static_cast<Eigen::Index>(j)]) * w[j];
    }
    // M V = W Lambda  <=>  V^T M^T = (W Lambda)^T
    const Eigen::MatrixXd Mt = V.transpose().colPivHouseholderQr().solve(WL.transpose());
    Mat4 M = Mt.transpose();
    const double residual = (M * V - WL).cwiseAbs().maxCoeff() / WL.cwiseAbs().maxCoeff();
    if (residual > 1e-8)
        throw SolverError("generator system is inconsistent (residual " + std::to_string(residual) + ")");
    if (lorentz_residual(M) > 1e-8)
        throw SolverError("solved generator does not preserve the Lorentz form");
    if ((M * M - Mat4::Identity()).cwiseAbs().maxCoeff() > 1e-8 * M.cwiseAbs().maxCoeff() * M.cwiseAbs().maxCoeff())
        throw SolverError("solved generator is not an involution");
    return Isometry{M, {facet_index}};
}

inline GeneratorSet generator_set(const FundamentalDomain& d) {
    GeneratorSet gs{d.kind, {}};
    for (int f = 0; f < static_cast<int>(d.facet_count()); ++f)
        gs.generators.push_back(solve_generator(d, f));
    return gs;
}

enum class EdgeKind { Intersecting, Parallel, Diverging };

struct SchemeEdge {
    int i;
    int j;
    EdgeKind kind;
    /// k for a dihedral angle pi/k; 0 when the pair does not intersect.
    int order;
    double angle_or_length;
};

/// Weighted graph on the facets; perpendicular pairs carry no edge.
struct CoxeterScheme {
    int nodes = 0;
    std::vector<SchemeEdge> edges;

    std::optional<SchemeEdge> edge(int i, int j) const {
        for (const auto& e : edges)
            if ((e.i == i && e.j == j) || (e.i == j && e.j == i))
                return e;
        return std::nullopt;
    }
};

inline CoxeterScheme scheme_from_domain(const FundamentalDomain& d) {
    CoxeterScheme s;
    s.nodes = static_cast<int>(d.facet_count());
    for (int i = 0; i < s.nodes; ++i) {
        for (int j = i + 1; j < s.nodes; ++j) {
            const PlaneRelation rel = plane_pair_relation(d.facet_forms[static_cast<std::size_t>(i)],
                                                          d.facet_forms[static_cast<std::size_t>(j)], 1e-9);
            if (std::holds_alternative<Perpendicular>(rel))
                continue;
            if (const auto* x = std::get_if<Intersecting>(&rel)) {
                const int k = static_cast<int>(std::lround(std::numbers::pi / x->angle));
                if (k < 2 || std::abs(std::numbers::pi / k - x->angle) > 1e-9)
                    throw DomainError("dihedral angle is not a submultiple of pi");
                s.edges.push_back({i, j, EdgeKind::Intersecting, k, x->angle});
            } else if (std::holds_alternative<Parallel>(rel)) {
                s.edges.push_back({i, j, EdgeKind::Parallel, 0, 0.0});
            } else {
                s.edges.push_back({i, j, EdgeKind::Diverging, 0, std::get<Diverging>(rel).length});
            }
        }
    }
    return s;
}

/// Linear Coxeter-Dynkin diagram of the full honeycomb symmetry group:
/// {p,q,r} has branch weights p, q, r.
struct HoneycombSymbol {
    int p, q, r;
    /// Dihedral angle of a cell: r cells meet around each edge.
    double cell_dihedral_angle() const { return 2.0 * std::numbers::pi / r; }
};

inline HoneycombSymbol honeycomb_symbol(DomainKind k) {
    return k == DomainKind::Tetra336 ? HoneycombSymbol{3, 3, 6} : HoneycombSymbol{4, 3, 6};
}

struct RelationResult {
    int i;
    int j;
    EdgeKind kind;
    int order;
    /// max |(g_i g_j)^k / c - I| for Intersecting pairs.
    double residual;
    /// Translation length of g_i g_j for non-intersecting pairs.
    double translation_length;
    bool ok;
};

struct RelationReport {
    std::vector<double> involution_residuals;
    std::vector<RelationResult> relations;
    double max_residual = 0.0;
    bool ok = true;
};

namespace detail {

inline double scalar_identity_residual(const Mat4& p) {
    const double c = p.trace() / 4.0;
    if (c == 0.0)
        return std::numeric_limits<double>::infinity();
    return (p / c - Mat4::Identity()).cwiseAbs().maxCoeff();
}

} // namespace detail

inline RelationReport verify_relations(const GeneratorSet& gens, const CoxeterScheme& scheme, double tol = 1e-9) {
    RelationReport rep;
    std::vector<Mat4> g;
    for (const auto& x : gens.generators)
        g.push_back(x.normalized().matrix);
    for (const auto& m : g) {
        const double r = detail::scalar_identity_residual(m * m);
        rep.involution_residuals.push_back(r);
        rep.max_residual = std::max(rep.max_residual, r);
        rep.ok = rep.ok && r <= tol;
    }
    for (const auto& e : scheme.edges) {
        const Mat4 prod = g[static_cast<std::size_t>(e.i)] * g[static_cast<std::size_t>(e.j)];
        RelationResult rr{e.i, e.j, e.kind, e.order, 0.0, 0.0, true};
        if (e.kind == EdgeKind::Intersecting) {
            Mat4 p = Mat4::Identity();
            for (int k = 0; k < e.order; ++k)
                p = p * prod;
            rr.residual = detail::scalar_identity_residual(p);
            rr.ok = rr.residual <= tol;
            rep.max_residual = std::max(rep.max_residual, rr.residual);
        } else {
            // eigenvalues e^l, e^-l, 1, 1
            rr.translation_length = std::acosh(std::max(1.0, (prod.trace() - 2.0) / 2.0));
        }
        rep.ok = rep.ok && rr.ok;
        rep.relations.push_back(rr);
    }
    return rep;
}

/// Orthoscheme A1A2A3A4 of the tetrahedral cell: A1 = E0, A4 = E1, A3 the
/// centre of facet E1E2E3, A2 the foot of E0 on edge E1E2.
struct OrthoschemeData {
    ProjectivePoint a1{1, 0, 0, 1};
    ProjectivePoint a2{1, std::sqrt(3.0) / 4, 0.25, 0};
    ProjectivePoint a3{1, 0, 0, 0};
    ProjectivePoint a4{1, 0, 1, 0};
};

} // namespace horokit
