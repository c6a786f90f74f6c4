#pragma once

// Lorentzian linear algebra on the projective (Beltrami-Klein) model of H^3.
//
// Points and planes are homogeneous 4-vectors. The bilinear form has
// signature (1,3):  <x,y> = -x0*y0 + x1*y1 + x2*y2 + x3*y3.
// Curvature is fixed at K = -1.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace horokit {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

/// Below this magnitude x0 is treated as zero when canonicalizing.
inline constexpr double kCanonicalTol = 1e-12;
/// Two points are projectively equal when the sine of the angle between
/// their representatives is at most this.
inline constexpr double kProjectiveTol = 1e-9;
inline constexpr double kClassifyTol = 1e-9;

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InvalidPointError : public Error {
  public:
    using Error::Error;
};

/// An argument lies outside the region where the operation is defined.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// A numerical procedure failed to converge or produced an inconsistent result.
class NumericError : public Error {
  public:
    using Error::Error;
};

inline const Mat4& signature_matrix() {
    static const Mat4 J = Vec4(-1.0, 1.0, 1.0, 1.0).asDiagonal();
    return J;
}

inline double lorentz_dot(const Vec4& x, const Vec4& y) {
    return -x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
}

/// Nonzero 4-vector up to scale.
class ProjectivePoint {
  public:
    explicit ProjectivePoint(const Vec4& coords) : coords_(coords) {
        if (!coords_.allFinite() || coords_.cwiseAbs().maxCoeff() == 0.0)
            throw InvalidPointError("projective point must be a finite nonzero vector");
    }
    ProjectivePoint(double x0, double x1, double x2, double x3)
        : ProjectivePoint(Vec4(x0, x1, x2, x3)) {}

    /// Klein point (1, x, y, z).
    static ProjectivePoint from_klein(const Vec3& p) { return ProjectivePoint(1.0, p[0], p[1], p[2]); }

    const Vec4& coords() const { return coords_; }
    double operator[](int i) const { return coords_[i]; }

    /// x0 = 1 when x0 is not (numerically) zero; otherwise the spatial part
    /// is normalized to unit length with its first nonzero entry positive.
    ProjectivePoint canonical() const {
        if (std::abs(coords_[0]) > kCanonicalTol * coords_.norm())
            return ProjectivePoint(coords_ / coords_[0]);
        Vec4 v = coords_;
        v[0] = 0.0;
        const double n = v.norm();
        if (n == 0.0)
            throw InvalidPointError("projective point has no usable representative");
        v /= n;
        for (int i = 1; i < 4; ++i) {
            if (std::abs(v[i]) > kCanonicalTol) {
                if (v[i] < 0.0)
                    v = -v;
                break;
            }
        }
        return ProjectivePoint(v);
    }

    bool is_finite_point() const { return std::abs(coords_[0]) > kCanonicalTol * coords_.norm(); }

    /// Cartesian coordinates inside the model ball. Requires x0 != 0.
    Vec3 klein() const {
        if (!is_finite_point())
            throw DomainError("point at projective infinity has no Klein coordinates");
        return coords_.tail<3>() / coords_[0];
    }

  private:
    Vec4 coords_;
};

/// Linear form a; a point X is incident when a . x = 0 (plain contraction).
class PlaneForm {
  public:
    explicit PlaneForm(const Vec4& coeffs) : coeffs_(coeffs) {
        if (!coeffs_.allFinite() || coeffs_.cwiseAbs().maxCoeff() == 0.0)
            throw InvalidPointError("plane form must be a finite nonzero covector");
    }
    PlaneForm(double a0, double a1, double a2, double a3) : PlaneForm(Vec4(a0, a1, a2, a3)) {}

    const Vec4& coeffs() const { return coeffs_; }
    double operator[](int i) const { return coeffs_[i]; }

    double contract(const ProjectivePoint& x) const { return coeffs_.dot(x.coords()); }

  private:
    Vec4 coeffs_;
};

enum class PointClass { Interior, Ideal, Outer };

inline const char* to_string(PointClass c) {
    switch (c) {
    case PointClass::Interior: return "interior";
    case PointClass::Ideal: return "ideal";
    case PointClass::Outer: return "outer";
    }
    return "?";
}

inline double bilinear_form(const ProjectivePoint& x, const ProjectivePoint& y) {
    return lorentz_dot(x.coords(), y.coords());
}

inline PointClass classify(const ProjectivePoint& x, double tol = kClassifyTol) {
    if (!(tol > 0.0))
        throw DomainError("classification tolerance must be positive");
    const ProjectivePoint c = x.canonical();
    const double q = bilinear_form(c, c);
    if (std::abs(q) <= tol)
        return PointClass::Ideal;
    return q < 0.0 ? PointClass::Interior : PointClass::Outer;
}

/// Sine of the angle between the two representatives, sign-insensitive.
inline double projective_sine(const ProjectivePoint& a, const ProjectivePoint& b) {
    const Vec4 ua = a.coords().normalized();
    Vec4 ub = b.coords().normalized();
    if (ua.dot(ub) < 0.0)
        ub = -ub;
    const double d = (ua - ub).norm(); // 2 sin(theta/2)
    return d * std::sqrt(std::max(0.0, 1.0 - 0.25 * d * d));
}

inline bool projectively_equal(const ProjectivePoint& a, const ProjectivePoint& b,
                               double tol = kProjectiveTol) {
    return projective_sine(a, b) <= tol;
}

/// Representative on the upper sheet of the hyperboloid <X,X> = -1.
inline Vec4 hyperboloid_point(const ProjectivePoint& x) {
    const double q = bilinear_form(x, x);
    if (!(q < 0.0))
        throw DomainError("point is not interior to the model");
    Vec4 v = x.coords() / std::sqrt(-q);
    if (v[0] < 0.0)
        v = -v;
    return v;
}

/// Hyperbolic distance between two interior points.
///
/// Uses d = 2 asinh(|X - Y|_L / 2) on hyperboloid representatives, which
/// equals arccosh(-<x,y>/sqrt(<x,x><y,y>)) without its cancellation near 0.
inline double distance(const ProjectivePoint& x, const ProjectivePoint& y) {
    if (classify(x, kCanonicalTol) != PointClass::Interior ||
        classify(y, kCanonicalTol) != PointClass::Interior)
        throw DomainError("distance requires two interior points");
    const Vec4 X = hyperboloid_point(x.canonical());
    const Vec4 Y = hyperboloid_point(y.canonical());
    const Vec4 d = X - Y;
    return 2.0 * std::asinh(0.5 * std::sqrt(std::max(0.0, lorentz_dot(d, d))));
}

/// Index raising: J^{-1} a.
inline ProjectivePoint pole(const PlaneForm& a) {
    return ProjectivePoint(signature_matrix() * a.coeffs());
}

/// Index lowering: the plane of points conjugate to p.
inline PlaneForm polar(const ProjectivePoint& p) {
    return PlaneForm(signature_matrix() * p.coords());
}

inline ProjectivePoint perpendicular_foot(const ProjectivePoint& x, const PlaneForm& a) {
    const ProjectivePoint u = pole(a);
    if (classify(u, kCanonicalTol) != PointClass::Outer)
        throw DomainError("plane does not meet the model (its pole is not an outer point)");
    const Vec4& uc = u.coords();
    const Vec4 y = x.coords() - (lorentz_dot(x.coords(), uc) / lorentz_dot(uc, uc)) * uc;
    if (y.norm() <= kCanonicalTol * x.coords().norm())
        throw DomainError("point coincides with the pole of the plane");
    return ProjectivePoint(y).canonical();
}

/// Second intersection of the line through ideal p and interior q with the
/// absolute quadric.
inline ProjectivePoint second_quadric_intersection(const ProjectivePoint& p, const ProjectivePoint& q) {
    if (classify(p) != PointClass::Ideal)
        throw DomainError("first argument must be an ideal point");
    if (classify(q, kCanonicalTol) != PointClass::Interior)
        throw DomainError("second argument must be an interior point");
    const Vec4 pc = p.canonical().coords();
    const Vec4 qc = q.canonical().coords();
    // <p + t q, p + t q> = A + 2 B t + C t^2 with A ~ 0; take the far root.
    const double A = lorentz_dot(pc, pc);
    const double B = lorentz_dot(pc, qc);
    const double C = lorentz_dot(qc, qc);
    const double disc = std::sqrt(std::max(0.0, B * B - A * C));
    const double t = (-B - std::copysign(disc, B)) / C;
    return ProjectivePoint(pc + t * qc).canonical();
}

struct Perpendicular {};
struct Intersecting {
    double angle;
};
struct Parallel {};
struct Diverging {
    double length;
};
using PlaneRelation = std::variant<Perpendicular, Intersecting, Parallel, Diverging>;

/// <b_i, b_j> for unit poles of the two forms.
inline double normalized_pole_product(const PlaneForm& a, const PlaneForm& b) {
    const Mat4& J = signature_matrix();
    const double aa = a.coeffs().dot(J * a.coeffs());
    const double bb = b.coeffs().dot(J * b.coeffs());
    if (!(aa > 0.0) || !(bb > 0.0))
        throw DomainError("plane pole cannot be normalized (plane misses the model)");
    return a.coeffs().dot(J * b.coeffs()) / std::sqrt(aa * bb);
}

inline PlaneRelation plane_pair_relation(const PlaneForm& a, const PlaneForm& b, double tol = 1e-12) {
    const double g = normalized_pole_product(a, b);
    if (std::abs(g) <= tol)
        return Perpendicular{};
    if (std::abs(std::abs(g) - 1.0) <= tol)
        return Parallel{};
    if (std::abs(g) > 1.0)
        return Diverging{std::acosh(std::abs(g))};
    return Intersecting{std::acos(-g)};
}

inline Eigen::MatrixXd gram_matrix(const std::vector<PlaneForm>& forms) {
    const auto n = static_cast<Eigen::Index>(forms.size());
    Eigen::MatrixXd G(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j)
            G(i, j) = G(j, i) = (i == j) ? 1.0 : normalized_pole_product(forms[i], forms[j]);
    return G;
}

/// Scalar c with M^T J M = c J, fitted over the full matrix.
inline double lorentz_scale(const Mat4& m) {
    const Mat4& J = signature_matrix();
    return (J * m.transpose() * J * m).trace() / 4.0;
}

/// max |M^T J M - c J| / |c|.
inline double lorentz_residual(const Mat4& m) {
    const Mat4& J = signature_matrix();
    const double c = lorentz_scale(m);
    return (m.transpose() * J * m - c * J).cwiseAbs().maxCoeff() / std::abs(c);
}

/// Projective transformation preserving the form up to scale.
struct Isometry {
    Mat4 matrix = Mat4::Identity();
    std::vector<int> word;

    static Isometry identity() { return {}; }

    /// Rescaled so that M^T J M = J and M00 > 0 (time orientation kept).
    Isometry normalized() const {
        const double c = lorentz_scale(matrix);
        if (!(c > 0.0))
            throw NumericError("matrix does not preserve the Lorentz form");
        Mat4 m = matrix / std::sqrt(c);
        if (m(0, 0) < 0.0)
            m = -m;
        return Isometry{m, word};
    }

    Isometry operator*(const Isometry& other) const {
        std::vector<int> w = word;
        w.insert(w.end(), other.word.begin(), other.word.end());
        return Isometry{matrix * other.matrix, std::move(w)};
    }
};

inline ProjectivePoint apply(const Isometry& m, const ProjectivePoint& x) {
    return ProjectivePoint(m.matrix * x.coords()).canonical();
}

/// Max entrywise deviation between a and the best scalar multiple of b,
/// relative to the largest entry of a.
inline double projective_matrix_deviation(const Mat4& a, const Mat4& b) {
    const double bb = b.squaredNorm();
    if (bb == 0.0)
        return std::numeric_limits<double>::infinity();
    const double c = a.cwiseProduct(b).sum() / bb;
    return (a - c * b).cwiseAbs().maxCoeff() / a.cwiseAbs().maxCoeff();
}

} // namespace horokit
