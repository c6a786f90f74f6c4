#pragma once

// Hyperbolic volumes of ideal cells.

#include "horokit/coxeter.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <array>
#include <cmath>
#include <numbers>

namespace horokit {

/// Lobachevsky function  L(theta) = -int_0^theta log|2 sin t| dt.
///
/// L is odd and pi-periodic, so theta is reduced to (-pi/2, pi/2]; there
/// the logarithmic singularity at 0 is split off analytically and the
/// smooth remainder log(sin t / t) is integrated numerically.
inline double lobachevsky(double theta) {
    using std::numbers::pi;
    double x = std::remainder(theta, pi);
    if (x == 0.0)
        return 0.0;
    const double sign = x < 0.0 ? -1.0 : 1.0;
    x = std::abs(x);
    auto smooth = [](double t) { return t == 0.0 ? 0.0 : std::log(std::sin(t) / t); };
    double err = 0.0;
    const double rest = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(smooth, 0.0, x, 15, 1e-15, &err);
    // int_0^x log(2 sin t) = x log 2 + (x log x - x) + rest
    return -sign * (x * std::log(2.0) + x * std::log(x) - x + rest);
}

/// Volume of the ideal tetrahedron with vertices a, b, c, d: the sum of L
/// over the dihedral angles at the three edges through a. Zero when the
/// vertices are coplanar.
inline double ideal_tetrahedron_volume(const std::array<ProjectivePoint, 4>& v) {
    std::vector<ProjectivePoint> verts(v.begin(), v.end());
    // faces through vertex 0, each oriented towards the remaining vertex
    std::array<PlaneForm, 3> faces{PlaneForm(1, 0, 0, 0), PlaneForm(1, 0, 0, 0), PlaneForm(1, 0, 0, 0)};
    try {
        faces[0] = detail::solve_facet_form(verts, {0, 2, 3}); // opposite b
        faces[1] = detail::solve_facet_form(verts, {0, 1, 3}); // opposite c
        faces[2] = detail::solve_facet_form(verts, {0, 1, 2}); // opposite d
    } catch (const DegenerateFacetError&) {
        return 0.0;
    }
    auto angle = [&](int i, int j) {
        const PlaneRelation r = plane_pair_relation(faces[static_cast<std::size_t>(i)],
                                                    faces[static_cast<std::size_t>(j)], 1e-14);
        if (const auto* x = std::get_if<Intersecting>(&r))
            return x->angle;
        if (std::holds_alternative<Perpendicular>(r))
            return std::numbers::pi / 2;
        return 0.0;
    };
    // edge ab lies on faces opposite c and d, etc.
    const double ab = angle(1, 2), ac = angle(0, 2), ad = angle(0, 1);
    if (std::abs(ab + ac + ad - std::numbers::pi) > 1e-8)
        return 0.0;
    return lobachevsky(ab) + lobachevsky(ac) + lobachevsky(ad);
}

/// Ideal tetrahedra (as vertex index quadruples) coning vertex 0 over the
/// fan-triangulated facets that do not contain it.
inline std::vector<std::array<int, 4>> cone_decomposition(const FundamentalDomain& d) {
    std::vector<std::array<int, 4>> out;
    for (int f = 0; f < static_cast<int>(d.facet_count()); ++f) {
        if (d.facet_contains(f, 0))
            continue;
        const auto ring = ordered_facet(d, f);
        for (std::size_t k = 1; k + 1 < ring.size(); ++k)
            out.push_back({0, ring[0], ring[k], ring[k + 1]});
    }
    return out;
}

/// Exact volume of an ideal cell via its cone decomposition.
inline double cell_volume(const FundamentalDomain& d) {
    double v = 0.0;
    for (const auto& t : cone_decomposition(d))
        v += ideal_tetrahedron_volume({d.vertices[static_cast<std::size_t>(t[0])], d.vertices[static_cast<std::size_t>(t[1])],
                                       d.vertices[static_cast<std::size_t>(t[2])], d.vertices[static_cast<std::size_t>(t[3])]});
    return v;
}

namespace detail {

/// int_0^R r^2 / (1 - r^2)^2 dr, given R and 1 - R^2.
inline double radial_volume(double R, double one_minus_R2) {
    return 0.5 * (R / one_minus_R2 - std::atanh(R));
}

/// Volume of the cone from O over the Klein triangle (v, a, b), where v is
/// an ideal vertex and a, b are interior points. The cone is written as an
/// integral over the triangle, dV = F(|p|) h / |p|^3 dA, with a Duffy
/// collapse at v so the 1/|p - v| blow-up is absorbed by the Jacobian.
inline double cone_over_triangle(const Vec3& v, const Vec3& a, const Vec3& b, double tol) {
    const Vec3 normal = (a - v).cross(b - v);
    const double area2 = normal.norm();
    if (area2 < 1e-15)
        return 0.0;
    const double h = std::abs(v.dot(normal / area2));
    if (h < 1e-13)
        return 0.0;
    using boost::math::quadrature::gauss_kronrod;
    auto outer = [&](double w) {
        const Vec3 dir = (1.0 - w) * (a - v) + w * (b - v);
        const double vd = v.dot(dir), dd = dir.squaredNorm();
        auto inner = [&](double u) {
            const Vec3 p = v + u * dir;
            const double R = p.norm();
            const double omr2 = -u * (2.0 * vd + u * dd); // 1 - |p|^2 with |v| = 1
            return u * radial_volume(R, omr2) * h / (R * R * R);
        };
        return gauss_kronrod<double, 31>::integrate(inner, 0.0, 1.0, 12, tol);
    };
    return area2 * gauss_kronrod<double, 31>::integrate(outer, 0.0, 1.0, 12, tol);
}

} // namespace detail

/// Independent volume estimate: numerical integration of the Klein volume
/// element dx dy dz / (1 - r^2)^2 over the cell, as cones from O over the
/// facets. Requires O to lie in the closed cell.
inline double cell_volume_quadrature(const FundamentalDomain& d, double tol = 1e-10) {
    double total = 0.0;
    for (int f = 0; f < static_cast<int>(d.facet_count()); ++f) {
        if (d.facet_forms[static_cast<std::size_t>(f)][0] < -1e-12)
            throw DomainError("model centre lies outside the cell");
        const auto ring = ordered_facet(d, f);
        Vec3 g = Vec3::Zero();
        for (int v : ring)
            g += d.vertices[static_cast<std::size_t>(v)].klein();
        g /= static_cast<double>(ring.size());
        for (std::size_t k = 0; k < ring.size(); ++k) {
            const Vec3 p = d.vertices[static_cast<std::size_t>(ring[k])].klein();
            const Vec3 q = d.vertices[static_cast<std::size_t>(ring[(k + 1) % ring.size()])].klein();
            const Vec3 m = 0.5 * (p + q);
            // each sub-triangle keeps exactly one ideal corner
            total += detail::cone_over_triangle(p, m, g, tol);
            total += detail::cone_over_triangle(q, g, m, tol);
        }
    }
    if (!std::isfinite(total))
        throw NumericError("volume quadrature did not converge");
    return total;
}

} // namespace horokit
