#pragma once

// Horoballs in the Beltrami-Klein model.
//
// A horoball centred at the ideal point n (a unit 3-vector) is stored by its
// signed depth d: the hyperbolic distance from the model centre O to the
// horosphere, positive when O lies outside the ball. The size parameter is
// s = tanh(d). For n = (0,0,1) the horosphere is the spheroid
//
//     2(x^2 + y^2)/(1-s) + 4(z - (1+s)/2)^2/(1-s)^2 = 1.
//
// Equivalently the ball is {X : -<X, L> <= 1} on the hyperboloid, with the
// light-like vector L = e^d (1, n). Isometries act linearly on L.

#include "horokit/lorentz.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <cmath>
#include <variant>

namespace horokit {

/// Orthonormal frame whose third column is `axis`.
inline Eigen::Matrix3d frame_for_axis(const Vec3& axis) {
    const Vec3 n = axis.normalized();
    // coordinate axis least aligned with n (first one on ties)
    int k = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(n[i]) < std::abs(n[k]))
            k = i;
    const Vec3 helper = Vec3::Unit(k);
    const Vec3 e1 = (helper - helper.dot(n) * n).normalized();
    const Vec3 e2 = n.cross(e1);
    Eigen::Matrix3d R;
    R.col(0) = e1;
    R.col(1) = e2;
    R.col(2) = n;
    return R;
}

class Horoball {
  public:
    Horoball(const ProjectivePoint& center, double s) : Horoball(ideal_axis(center), depth_from_s(s)) {}

    static Horoball from_depth(const Vec3& axis, double depth) { return Horoball(axis.normalized(), depth); }

    /// Ball whose light-like vector is (a multiple of) L.
    static Horoball from_light_vector(const Vec4& L) {
        const double l0 = std::abs(L[0]);
        if (!(l0 > 0.0) || !std::isfinite(l0))
            throw DomainError("light vector has no positive time component");
        Vec3 n = L.tail<3>() / L[0];
        const double len = n.norm();
        if (std::abs(len - 1.0) > 1e-6)
            throw DomainError("light vector is not null");
        return Horoball(n / len, std::log(l0));
    }

    ProjectivePoint center() const { return ProjectivePoint(1.0, axis_[0], axis_[1], axis_[2]); }
    const Vec3& axis() const { return axis_; }
    double depth() const { return depth_; }
    double s() const { return std::tanh(depth_); }
    /// 1 - s without cancellation.
    double one_minus_s() const { return 2.0 / (1.0 + std::exp(2.0 * depth_)); }
    double one_plus_s() const { return 2.0 / (1.0 + std::exp(-2.0 * depth_)); }
    double lambda() const { return std::exp(depth_); }
    Vec4 light_vector() const {
        const double l = lambda();
        return Vec4(l, l * axis_[0], l * axis_[1], l * axis_[2]);
    }

  private:
    Horoball(const Vec3& axis, double depth) : axis_(axis), depth_(depth) {
        if (!std::isfinite(depth_))
            throw DomainError("horoball size must be finite");
    }

    static Vec3 ideal_axis(const ProjectivePoint& c) {
        if (classify(c) != PointClass::Ideal)
            throw DomainError("horoball centre must be an ideal point");
        const Vec3 n = c.canonical().klein();
        return n.normalized();
    }

    static double depth_from_s(double s) {
        if (!(s > -1.0 && s < 1.0))
            throw DomainError("horoball parameter s must lie in (-1, 1)");
        return std::atanh(s);
    }

    Vec3 axis_;
    double depth_;
};

/// Spheroid (ellipsoid of revolution) occupied by a horoball in the model.
struct Spheroid {
    Vec3 euclidean_center;
    Vec3 axis;
    double semi_axis_equatorial;
    double semi_axis_polar;
};

/// Normalized horosphere equation: 0 on the horosphere, negative inside the
/// ball, positive outside.
inline double horosphere_value(const Horoball& h, const Vec3& p) {
    const Vec3& n = h.axis();
    const double oms = h.one_minus_s();
    const double a = p.dot(n);
    const double rho2 = (p - a * n).squaredNorm();
    const double dz = (a - 1.0) + 0.5 * oms; // a - (1+s)/2
    return 2.0 * rho2 / oms + 4.0 * dz * dz / (oms * oms) - 1.0;
}

inline double horosphere_value(const Horoball& h, const ProjectivePoint& x) {
    return horosphere_value(h, x.canonical().klein());
}

/// Point of the horosphere at polar angle theta (from the ideal centre) and
/// azimuth phi, in a frame whose third axis is the ball's axis.
inline ProjectivePoint polar_point(const Horoball& h, double theta, double phi) {
    const double oms = h.one_minus_s();
    const double r = std::sqrt(0.5 * oms) * std::sin(theta);
    const double sh = std::sin(0.5 * theta);
    const Vec3 local(r * std::cos(phi), r * std::sin(phi), 1.0 - oms * sh * sh);
    return ProjectivePoint::from_klein(frame_for_axis(h.axis()) * local);
}

inline Spheroid to_spheroid(const Horoball& h) {
    const double oms = h.one_minus_s();
    return Spheroid{h.axis() * (0.5 * h.one_plus_s()), h.axis(), std::sqrt(0.5 * oms), 0.5 * oms};
}

/// Image of a horoball under an isometry.
inline Horoball transform(const Horoball& h, const Isometry& m) {
    const Mat4 M = m.normalized().matrix;
    return Horoball::from_light_vector(M * h.light_vector());
}

/// Point where the chord from h's centre to the ideal point q leaves the horoball.
inline ProjectivePoint chord_exit(const Horoball& h, const ProjectivePoint& q);

namespace detail {

/// Chord parameter t in (0,1] of the exit, for chord centre -> q with
/// kappa = 1 - n.q.
inline double exit_parameter(const Horoball& h, double kappa) {
    const double oms = h.one_minus_s();
    return 2.0 * oms / (2.0 * oms + kappa * h.one_plus_s());
}

inline Vec3 ideal_unit(const ProjectivePoint& q) {
    if (classify(q) != PointClass::Ideal)
        throw DomainError("chord endpoint must be an ideal point");
    return q.canonical().klein().normalized();
}

inline double chord_kappa(const Vec3& n, const Vec3& q) { return 0.5 * (n - q).squaredNorm(); }

} // namespace detail

inline ProjectivePoint chord_exit(const Horoball& h, const ProjectivePoint& q) {
    const Vec3 qn = detail::ideal_unit(q);
    const double kappa = detail::chord_kappa(h.axis(), qn);
    if (kappa <= 1e-18)
        throw DomainError("chord endpoint coincides with the horoball centre");
    const double t = detail::exit_parameter(h, kappa);
    return ProjectivePoint::from_klein((1.0 - t) * h.axis() + t * qn);
}

struct Disjoint {
    double gap;
};
struct Tangent {
    ProjectivePoint point;
};
struct Overlapping {
    double depth;
};
using TangencyResult = std::variant<Disjoint, Tangent, Overlapping>;

/// Signed hyperbolic distance between two horoballs with distinct centres:
/// log(-<L1, L2> / 2). Negative when they overlap.
inline double horoball_separation(const Horoball& a, const Horoball& b) {
    const double kappa = detail::chord_kappa(a.axis(), b.axis());
    return a.depth() + b.depth() + std::log(kappa) - std::log(2.0);
}

/// Gap between the two exits along the chord joining the centres, in the
/// chord parameter of the first ball (0 at its centre, 1 at the other).
inline double chord_gap(const Horoball& a, const Horoball& b) {
    const double kappa = detail::chord_kappa(a.axis(), b.axis());
    if (kappa <= 1e-18)
        throw DomainError("horoballs with equal centres are nested, not a packing pair");
    const double ta = detail::exit_parameter(a, kappa);
    const double tb = detail::exit_parameter(b, kappa);
    return (1.0 - tb) - ta;
}

inline TangencyResult tangency(const Horoball& a, const Horoball& b, double tol = 1e-9) {
    const double gap = chord_gap(a, b);
    if (std::abs(gap) <= tol) {
        const double kappa = detail::chord_kappa(a.axis(), b.axis());
        const double ta = detail::exit_parameter(a, kappa);
        const double tb = 1.0 - detail::exit_parameter(b, kappa);
        const double t = 0.5 * (ta + tb);
        return Tangent{ProjectivePoint::from_klein((1.0 - t) * a.axis() + t * b.axis())};
    }
    const double sep = horoball_separation(a, b);
    if (gap > 0.0)
        return Disjoint{sep};
    return Overlapping{-sep};
}

struct PlaneDisjoint {
    double margin;
};
struct PlaneTangent {
    ProjectivePoint point;
};
struct PlaneCrossing {
    double margin;
};
using PlaneTangencyResult = std::variant<PlaneDisjoint, PlaneTangent, PlaneCrossing>;

/// Minimum of horosphere_value over the plane and the minimizer.
///
/// The horosphere value is (p - C)^T Q (p - C) - 1; on the plane
/// a0 + a.p = 0 its minimum is (a0 + a.C)^2 / (a^T Q^-1 a) - 1.
inline std::pair<double, Vec3> plane_minimum(const Horoball& h, const PlaneForm& a) {
    if (classify(pole(a), kCanonicalTol) != PointClass::Outer)
        throw DomainError("plane does not meet the model");
    const Spheroid sp = to_spheroid(h);
    const Vec3& n = sp.axis;
    const double eq2 = sp.semi_axis_equatorial * sp.semi_axis_equatorial;
    const double po2 = sp.semi_axis_polar * sp.semi_axis_polar;
    const Eigen::Matrix3d Qinv = eq2 * Eigen::Matrix3d::Identity() + (po2 - eq2) * n * n.transpose();
    const Vec3 av = a.coeffs().tail<3>();
    const double lin = a[0] + av.dot(sp.euclidean_center);
    const double quad = av.dot(Qinv * av);
    const Vec3 argmin = sp.euclidean_center - Qinv * av * (lin / quad);
    return {lin * lin / quad - 1.0, argmin};
}

inline PlaneTangencyResult plane_tangency(const Horoball& h, const PlaneForm& a, double tol = 1e-10) {
    const auto [m, p] = plane_minimum(h, a);
    if (std::abs(m) <= tol)
        return PlaneTangent{ProjectivePoint::from_klein(p)};
    if (m > 0.0)
        return PlaneDisjoint{m};
    return PlaneCrossing{m};
}

/// Length of the horocyclic arc over a chord of hyperbolic length x.
inline double arc_length(double x) {
    if (x < 0.0)
        throw DomainError("chord length must be non-negative");
    return 2.0 * std::sinh(0.5 * x);
}

/// Volume of the part of `h` inside the trihedral cone spanned at its centre
/// by the edges towards `others`: half the Euclidean area of the horospheric
/// triangle cut out by those edges.
inline double piece_volume_tetra(const Horoball& h, const std::array<ProjectivePoint, 3>& others) {
    std::array<ProjectivePoint, 3> exits{chord_exit(h, others[0]), chord_exit(h, others[1]), chord_exit(h, others[2])};
    std::array<double, 3> side{
        arc_length(distance(exits[1], exits[2])),
        arc_length(distance(exits[0], exits[2])),
        arc_length(distance(exits[0], exits[1])),
    };
    std::sort(side.begin(), side.end(), std::greater<>());
    const double a = side[0], b = side[1], c = side[2];
    // Heron in the form that stays accurate for needle-like triangles
    const double prod = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    if (!(prod > 1e-28 * a * a * a * a))
        throw DomainError("horospheric triangle is degenerate");
    return 0.125 * std::sqrt(prod);
}

} // namespace horokit
